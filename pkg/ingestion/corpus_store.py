"""Loading, ordering and serialisation of the bilingual example corpus.

A corpus is immutable once loaded. Ordinals follow record order and are the
"obtained first" order used to break similarity ties downstream.
"""
from collections import Counter
from pathlib import Path
from typing import Callable, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.logging import get_logger
from ingestion.corpus_sources import format_name, source_for
from ingestion.interfaces import RawRecord
from processing.annotation.encoder import strip_terminal_punctuation
from processing.errors import FormatError, UnknownLabel, Unlabelable
from processing.taxonomy import TamCategory, parse_label

logger = get_logger("corpus_store")

Labeler = Callable[[str], TamCategory]


class ExamplePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    ordinal: int = Field(ge=0)
    japanese: str
    english: str = ""
    label: TamCategory

    @field_validator("japanese")
    @classmethod
    def japanese_not_empty(cls, v: str) -> str:
        if not v:
            raise ValueError("Japanese side is empty")
        return v


class CorpusStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    pair_count: int
    label_histogram: dict[TamCategory, int]


class Corpus(BaseModel):
    """Ordered example pairs. ``pairs[i].ordinal == i`` always holds."""

    model_config = ConfigDict(frozen=True)

    pairs: tuple[ExamplePair, ...] = ()
    source_path: str = ""
    format: str = "tsv"

    @model_validator(mode="after")
    def dense_ordinals(self) -> "Corpus":
        for position, pair in enumerate(self.pairs):
            if pair.ordinal != position:
                raise ValueError(
                    f"Ordinals must be dense and ordered: position {position} holds {pair.ordinal}"
                )
        return self

    @property
    def stats(self) -> CorpusStats:
        histogram = Counter(p.label for p in self.pairs)
        return CorpusStats(pair_count=len(self.pairs), label_histogram=dict(histogram))

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, ordinal: int) -> ExamplePair:
        return self.pairs[ordinal]

    def __iter__(self) -> Iterator[ExamplePair]:  # type: ignore[override]
        # pairs in ordinal order, not pydantic field tuples
        return iter(self.pairs)

    @classmethod
    def from_records(
        cls,
        rows: list[tuple[str, str, TamCategory | str]],
        source_path: str = "<memory>",
    ) -> "Corpus":
        """Build a corpus from ``(japanese, english, label)`` tuples; used by tests and tools."""
        pairs = tuple(
            ExamplePair(
                ordinal=i,
                japanese=strip_terminal_punctuation(ja),
                english=en,
                label=label if isinstance(label, TamCategory) else parse_label(label),
            )
            for i, (ja, en, label) in enumerate(rows)
        )
        return cls(pairs=pairs, source_path=source_path)


def _resolve_label(
    record: RawRecord,
    labeler: Optional[Labeler],
) -> TamCategory:
    if record.label is not None:
        try:
            return parse_label(record.label)
        except UnknownLabel:
            if labeler is None:
                raise UnknownLabel(record.label, line=record.line)

    if labeler is None:
        raise UnknownLabel("", line=record.line)

    # Unlabelable propagates; the caller decides whether to skip.
    return labeler(record.english)


def load_corpus(
    path: str | Path,
    format: Optional[str] = None,
    labeler: Optional[Labeler] = None,
    skip_unlabelable: bool = False,
) -> Corpus:
    """
    Load a TSV or JSONL corpus.

    Japanese sentences have terminal punctuation stripped. Records whose label
    is missing or outside the closed set are rejected unless ``labeler`` is
    given, in which case the English side is labelled instead.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        FormatError: On malformed records.
        UnknownLabel: On an unresolvable label.
    """
    path = Path(path)
    source = source_for(path, format)
    records = source.read(path)

    pairs: list[ExamplePair] = []
    skipped = 0
    for record in records:
        japanese = strip_terminal_punctuation(record.japanese)
        if not japanese:
            raise FormatError("Japanese side is empty after stripping punctuation", line=record.line)

        try:
            label = _resolve_label(record, labeler)
        except Unlabelable as e:
            if skip_unlabelable:
                skipped += 1
                logger.warning(f"Skipping line {record.line}: {e}")
                continue
            raise UnknownLabel(record.label or "", line=record.line) from e

        pairs.append(
            ExamplePair(ordinal=len(pairs), japanese=japanese, english=record.english, label=label)
        )

    corpus = Corpus(pairs=tuple(pairs), source_path=str(path), format=format_name(source))
    logger.info(
        f"Loaded corpus {path.name}: {len(corpus)} pairs"
        + (f" ({skipped} unlabelable skipped)" if skipped else "")
    )
    return corpus


def dump_corpus(corpus: Corpus, path: str | Path, format: Optional[str] = None) -> Path:
    """Write ``corpus`` in TSV or JSONL so that ``load_corpus`` returns the same pairs."""
    path = Path(path)
    source = source_for(path, format)
    records = [
        RawRecord(line=p.ordinal + 1, japanese=p.japanese, english=p.english, label=p.label.value)
        for p in corpus
    ]
    out = source.write(records, path)
    logger.info(f"Wrote {len(records)} pairs to {out}")
    return out
