"""
Leave-one-out and held-out evaluation of the k-NN classifier.

Every run is deterministic: classification order follows ordinals, random
splits come from ``numpy.random.default_rng(seed)`` and the report carries no
timestamps, so identical inputs serialise to identical JSON.
"""
from typing import Iterable, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.logging import get_logger
from config.settings import config
from ingestion.corpus_store import Corpus
from pipeline.knn_classifier import classify_encoded
from pipeline.similarity_index import SuffixIndex, build_index
from processing.annotation.tokenizer import Lexicon, Tokenizer
from processing.annotation.units import Method
from processing.errors import EmptyCorpus, EmptyTrainingSet
from processing.taxonomy import EvalGroup, TamCategory, eval_group

logger = get_logger("evaluation")

SWEEP_METHODS = (Method.STRING, Method.ANALYSIS)
SWEEP_KS = (1, 3, 5, 7, 9)


class Score(BaseModel):
    model_config = ConfigDict(frozen=True)

    correct: int = Field(ge=0)
    total: int = Field(ge=0)

    @property
    def accuracy(self) -> Optional[float]:
        return self.correct / self.total if self.total else None

    def cell(self) -> str:
        """``"83.0 (240/289)"``; a dash stands in for the percentage of an empty group."""
        pct = "-" if self.accuracy is None else f"{100 * self.accuracy:.1f}"
        return f"{pct} ({self.correct}/{self.total})"


class SentenceResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    ordinal: int
    gold: TamCategory
    predicted: TamCategory
    similarity: int
    tie_broken: bool = False

    @property
    def correct(self) -> bool:
        return self.gold is self.predicted


class EvalReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: Method
    k: int
    cap: int = config.DEFAULT_CAP
    protocol: str
    seed: Optional[int] = None
    exclude_self: bool = True
    overall: Score
    by_group: dict[EvalGroup, Score]
    by_category: dict[TamCategory, Score]
    per_sentence: list[SentenceResult]

    @model_validator(mode="after")
    def accounting(self) -> "EvalReport":
        for name, parts in (("by_group", self.by_group), ("by_category", self.by_category)):
            if sum(s.total for s in parts.values()) != self.overall.total:
                raise ValueError(f"{name} totals do not add up to the overall total")
            if sum(s.correct for s in parts.values()) != self.overall.correct:
                raise ValueError(f"{name} corrects do not add up to the overall correct count")
        return self

    @property
    def label(self) -> str:
        return f"Method {self.method}(k={self.k})"


def _score_frame(df: pd.DataFrame, key: str) -> dict:
    grouped = df.groupby(key, sort=False)["correct"].agg(["sum", "count"])
    return {
        idx: Score(correct=int(row["sum"]), total=int(row["count"]))
        for idx, row in grouped.iterrows()
    }


def build_report(
    results: list[SentenceResult],
    method: Method,
    k: int,
    cap: int,
    protocol: str,
    seed: Optional[int] = None,
    exclude_self: bool = True,
) -> EvalReport:
    """Aggregate per-sentence results into overall, group and category scores."""
    df = pd.DataFrame(
        {
            "category": [r.gold for r in results],
            "group": [eval_group(r.gold) for r in results],
            "correct": [r.correct for r in results],
        },
        columns=["category", "group", "correct"],
    )
    df["correct"] = df["correct"].astype(bool)

    by_group = _score_frame(df, "group") if len(df) else {}
    by_category = _score_frame(df, "category") if len(df) else {}

    return EvalReport(
        method=method,
        k=k,
        cap=cap,
        protocol=protocol,
        seed=seed,
        exclude_self=exclude_self,
        overall=Score(correct=int(df["correct"].sum()), total=len(df)),
        by_group={g: by_group.get(g, Score(correct=0, total=0)) for g in EvalGroup},
        by_category={c: by_category[c] for c in TamCategory if c in by_category},
        per_sentence=results,
    )


def _classify_all(
    index: SuffixIndex,
    query_index: SuffixIndex,
    ordinals: Iterable[int],
    k: int,
    cap: int,
    exclude_self: bool,
) -> list[SentenceResult]:
    queries = query_index.by_ordinal()
    results = []
    for ordinal in sorted(ordinals):
        entry = queries[ordinal]
        trace = classify_encoded(
            index, entry.units, k, cap=cap, exclude_ordinal=ordinal if exclude_self else None
        )
        results.append(
            SentenceResult(
                ordinal=ordinal,
                gold=entry.label,
                predicted=trace.winner,
                similarity=trace.best_similarity,
                tie_broken=trace.tie_broken,
            )
        )
    return results


def evaluate_loo(
    corpus: Corpus,
    method: Method | str,
    k: int = config.DEFAULT_K,
    lex: Optional[Lexicon] = None,
    cap: int = config.DEFAULT_CAP,
    exclude_self: bool = True,
    tokenizer: Optional[Tokenizer] = None,
    index: Optional[SuffixIndex] = None,
) -> EvalReport:
    """
    Classify every pair against the rest of the corpus.

    With ``exclude_self=False`` each sentence may retrieve itself, which
    measures how well the corpus memorises its own labels.

    Raises:
        EmptyCorpus: If the corpus has fewer than two pairs.
    """
    method = Method.parse(method)
    if len(corpus) < 2:
        raise EmptyCorpus("Leave-one-out evaluation needs at least two pairs")

    index = index or build_index(corpus, method, lex, tokenizer)
    results = _classify_all(index, index, range(len(corpus)), k, cap, exclude_self)
    report = build_report(results, method, k, cap, protocol="loo", exclude_self=exclude_self)
    logger.info(f"LOO {report.label}: {report.overall.cell()}")
    return report


def random_split(corpus: Corpus, test_size: int, seed: int = config.DEFAULT_SEED) -> frozenset[int]:
    """
    Draw ``test_size`` distinct ordinals with a seeded generator.

    Raises:
        EmptyTrainingSet: If nothing would be left to train on.
    """
    if test_size < 1:
        raise ValueError(f"test_size must be positive, got {test_size}")
    if test_size >= len(corpus):
        raise EmptyTrainingSet()
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(corpus), size=test_size, replace=False)
    return frozenset(int(i) for i in picked)


def evaluate_split(
    corpus: Corpus,
    test_ordinals: Iterable[int],
    method: Method | str,
    k: int = config.DEFAULT_K,
    lex: Optional[Lexicon] = None,
    cap: int = config.DEFAULT_CAP,
    seed: Optional[int] = None,
    tokenizer: Optional[Tokenizer] = None,
    index: Optional[SuffixIndex] = None,
) -> EvalReport:
    """
    Classify ``test_ordinals`` retrieving only from the complementary training set.

    ``seed`` is recorded in the report when the split came from ``random_split``.

    Raises:
        ValueError: If a test ordinal is not in the corpus.
        EmptyTrainingSet: If the test set covers the whole corpus.
    """
    method = Method.parse(method)
    test = frozenset(test_ordinals)
    unknown = sorted(o for o in test if not 0 <= o < len(corpus))
    if unknown:
        raise ValueError(f"Test ordinals not in corpus: {unknown}")
    training = [o for o in range(len(corpus)) if o not in test]
    if not training:
        raise EmptyTrainingSet()

    full = index or build_index(corpus, method, lex, tokenizer)
    train_index = full.subset(training)
    results = _classify_all(train_index, full, test, k, cap, exclude_self=False)
    report = build_report(results, method, k, cap, protocol="split", seed=seed)
    logger.info(
        f"Split {report.label}: {report.overall.cell()} "
        f"({len(test)} test / {len(training)} training)"
    )
    return report


def sweep(
    corpus: Corpus,
    lex: Optional[Lexicon] = None,
    methods: Iterable[Method | str] = SWEEP_METHODS,
    ks: Iterable[int] = SWEEP_KS,
    cap: int = config.DEFAULT_CAP,
    test_ordinals: Optional[Iterable[int]] = None,
    seed: Optional[int] = None,
    exclude_self: bool = True,
    tokenizer: Optional[Tokenizer] = None,
) -> list[EvalReport]:
    """
    Evaluate every (method, k) combination, leave-one-out unless ``test_ordinals`` is given.

    Each method's index is built once and shared across k. Method 2 is
    skipped with a warning when neither a lexicon nor a tokenizer is available.
    """
    test = None if test_ordinals is None else frozenset(test_ordinals)
    reports: list[EvalReport] = []
    for method in (Method.parse(m) for m in methods):
        if method is Method.ANALYSIS and lex is None and tokenizer is None:
            logger.warning("Skipping method 2 in sweep: no lexicon given")
            continue
        index = build_index(corpus, method, lex, tokenizer)
        for k in ks:
            if test is None:
                reports.append(
                    evaluate_loo(corpus, method, k, cap=cap, exclude_self=exclude_self, index=index)
                )
            else:
                reports.append(
                    evaluate_split(corpus, test, method, k, cap=cap, seed=seed, index=index)
                )
    return reports
