from enum import Enum

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from config.logging import get_logger
from ingestion.corpus_store import Corpus
from processing.taxonomy import TamCategory

logger = get_logger("Validator")


class Severity(str, Enum):
    WARNING = "warning"
    ERROR = "error"

    def __str__(self) -> str:
        return self.value


class ValidationIssue(BaseModel):
    model_config = ConfigDict(frozen=True)

    severity: Severity
    code: str
    message: str
    ordinals: list[int] = Field(default_factory=list)


class ValidationReport(BaseModel):
    source_path: str = ""
    pair_count: int = 0
    label_histogram: dict[TamCategory, int] = Field(default_factory=dict)
    issues: list[ValidationIssue] = Field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return any(i.severity is Severity.ERROR for i in self.issues)


class CorpusValidator:
    """
    Row-level checks over a loaded corpus. Never raises; every finding is an issue.
    """

    def __init__(self, corpus: Corpus):
        self.corpus = corpus

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "ordinal": p.ordinal,
                    "japanese": p.japanese,
                    "english": p.english,
                    "label": p.label.value,
                }
                for p in self.corpus.pairs
            ],
            columns=["ordinal", "japanese", "english", "label"],
        )

    def run(self) -> ValidationReport:
        df = self.to_frame()
        issues: list[ValidationIssue] = []

        # 1. Duplicate Japanese sentences are kept but flagged
        dupes = df[df.duplicated(subset=["japanese"], keep=False)]
        for japanese, group in dupes.groupby("japanese", sort=False):
            ordinals = group["ordinal"].astype(int).tolist()
            labels = sorted(set(group["label"]))
            detail = "same label" if len(labels) == 1 else "labels " + ", ".join(labels)
            issues.append(
                ValidationIssue(
                    severity=Severity.WARNING,
                    code="duplicate_japanese",
                    message=f"{japanese!r} occurs {len(ordinals)} times ({detail})",
                    ordinals=ordinals,
                )
            )

        # 2. Empty English sides
        for ordinal in df.loc[df["english"].str.strip() == "", "ordinal"].astype(int).tolist():
            issues.append(
                ValidationIssue(
                    severity=Severity.ERROR,
                    code="empty_english",
                    message=f"Pair {ordinal} has an empty English side",
                    ordinals=[ordinal],
                )
            )

        stats = self.corpus.stats
        logger.info(
            f"Validated {stats.pair_count} pairs: "
            f"{sum(i.severity is Severity.ERROR for i in issues)} errors, "
            f"{sum(i.severity is Severity.WARNING for i in issues)} warnings"
        )
        return ValidationReport(
            source_path=self.corpus.source_path,
            pair_count=stats.pair_count,
            label_histogram=stats.label_histogram,
            issues=issues,
        )


def validate_corpus(corpus: Corpus) -> ValidationReport:
    return CorpusValidator(corpus).run()
