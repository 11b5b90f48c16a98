"""Suffix similarity and nearest-example retrieval.

Entries are kept sorted by their *reversed* unit sequence. In that order the
shared-suffix length with a query never increases as you walk away from the
query's insertion point, so neighbours can be enumerated best-first by
expanding two pointers outward. ``naive_retrieve`` scans every entry and is
the reference the index is tested against.
"""
import bisect
from dataclasses import dataclass, field
from typing import Annotated, Iterable, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field

from config.logging import get_logger
from config.settings import config
from ingestion.corpus_store import Corpus
from processing.annotation.encoder import encode_text, resolve_tokenizer
from processing.annotation.tokenizer import Lexicon, Tokenizer
from processing.annotation.units import Method, Unit, UnitSequence
from processing.errors import EmptyCorpus, EmptyIndex, MethodMismatch
from processing.taxonomy import TamCategory

logger = get_logger("similarity_index")

SimilarityScore = Annotated[int, Field(ge=0)]


class Neighbor(BaseModel):
    model_config = ConfigDict(frozen=True)

    ordinal: int = Field(ge=0)
    similarity: SimilarityScore
    label: TamCategory


def _common_prefix(a: tuple[Unit, ...], b: tuple[Unit, ...]) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def _check_method(expected: Method, actual: Method) -> None:
    if expected is not actual:
        raise MethodMismatch(expected, actual)


def suffix_similarity(a: UnitSequence, b: UnitSequence) -> int:
    """Number of trailing units ``a`` and ``b`` share."""
    _check_method(a.provenance, b.provenance)
    n = min(len(a), len(b))
    i = 0
    while i < n and a.units[-1 - i] == b.units[-1 - i]:
        i += 1
    return i


def matched_suffix(a: UnitSequence, b: UnitSequence) -> tuple[Unit, ...]:
    n = suffix_similarity(a, b)
    return a.units[len(a) - n:] if n else ()


@dataclass(frozen=True)
class IndexEntry:
    ordinal: int
    label: TamCategory
    units: UnitSequence


@dataclass(frozen=True)
class SuffixIndex:
    """Immutable, sorted by ``(reversed units, ordinal)``."""

    entries: tuple[IndexEntry, ...]
    method: Method
    _keys: tuple[tuple[Unit, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        keys = tuple(e.units.reversed_key() for e in self.entries)
        for i in range(1, len(keys)):
            if (keys[i - 1], self.entries[i - 1].ordinal) > (keys[i], self.entries[i].ordinal):
                raise ValueError(f"Index entries out of order at position {i}")
        for e in self.entries:
            _check_method(self.method, e.units.provenance)
        object.__setattr__(self, "_keys", keys)

    def __len__(self) -> int:
        return len(self.entries)

    def by_ordinal(self) -> dict[int, IndexEntry]:
        return {e.ordinal: e for e in self.entries}

    def subset(self, ordinals: Iterable[int]) -> "SuffixIndex":
        """Index restricted to ``ordinals``; sorted order is inherited."""
        keep = set(ordinals)
        return SuffixIndex(
            entries=tuple(e for e in self.entries if e.ordinal in keep), method=self.method
        )

    def _ranked(
        self, query: UnitSequence, exclude_ordinal: Optional[int]
    ) -> Iterator[tuple[int, IndexEntry]]:
        """Yield ``(similarity, entry)`` in non-increasing similarity order."""
        qkey = query.reversed_key()
        # bisect on the keys alone; ordinal only breaks ties between equal keys
        pos = bisect.bisect_left(self._keys, qkey)
        left, right = pos - 1, pos

        def score(i: int) -> int:
            return _common_prefix(qkey, self._keys[i])

        left_sim = score(left) if left >= 0 else -1
        right_sim = score(right) if right < len(self._keys) else -1

        while left_sim >= 0 or right_sim >= 0:
            if right_sim >= left_sim:
                i, sim = right, right_sim
                right += 1
                right_sim = score(right) if right < len(self._keys) else -1
            else:
                i, sim = left, left_sim
                left -= 1
                left_sim = score(left) if left >= 0 else -1

            entry = self.entries[i]
            if entry.ordinal != exclude_ordinal:
                yield sim, entry


def build_index(
    corpus: Corpus,
    method: Method | str,
    lex: Optional[Lexicon] = None,
    tokenizer: Optional[Tokenizer] = None,
) -> SuffixIndex:
    """
    Encode every corpus pair and sort the entries by reversed unit sequence.

    Raises:
        EmptyCorpus: If the corpus has no pairs.
        ValueError: If Method 2 is requested without a lexicon or tokenizer.
    """
    method = Method.parse(method)
    if len(corpus) == 0:
        raise EmptyCorpus()

    tok = resolve_tokenizer(method, lex, tokenizer)
    entries = [
        IndexEntry(ordinal=p.ordinal, label=p.label, units=encode_text(p.japanese, method, tok))
        for p in corpus
    ]
    entries.sort(key=lambda e: (e.units.reversed_key(), e.ordinal))

    index = SuffixIndex(entries=tuple(entries), method=method)
    logger.info(f"Built method-{method} index over {len(index)} examples")
    return index


def _validate_query(index: SuffixIndex, query: UnitSequence, cap: int) -> None:
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    _check_method(index.method, query.provenance)
    if len(index) == 0:
        raise EmptyIndex()


def retrieve(
    index: SuffixIndex,
    query: UnitSequence,
    cap: int = config.DEFAULT_CAP,
    exclude_ordinal: Optional[int] = None,
) -> list[Neighbor]:
    """
    Return up to ``cap`` neighbours sorted by similarity descending, then ordinal ascending.

    ``exclude_ordinal`` removes one example from consideration (leave-one-out).

    Raises:
        MethodMismatch: If the query was encoded with another method.
        EmptyIndex: If the index has no entries.
    """
    _validate_query(index, query, cap)

    collected: list[tuple[int, IndexEntry]] = []
    threshold: Optional[int] = None
    for sim, entry in index._ranked(query, exclude_ordinal):
        if threshold is not None and sim < threshold:
            break
        collected.append((sim, entry))
        if threshold is None and len(collected) == cap:
            # Every remaining entry tied at this level must still be seen
            # before ordinals can decide the cut.
            threshold = sim

    collected.sort(key=lambda se: (-se[0], se[1].ordinal))
    return [
        Neighbor(ordinal=e.ordinal, similarity=sim, label=e.label) for sim, e in collected[:cap]
    ]


def naive_retrieve(
    index: SuffixIndex,
    query: UnitSequence,
    cap: int = config.DEFAULT_CAP,
    exclude_ordinal: Optional[int] = None,
) -> list[Neighbor]:
    """All-pairs scan with the same contract as ``retrieve``."""
    _validate_query(index, query, cap)
    scored = [
        (suffix_similarity(query, e.units), e)
        for e in index.entries
        if e.ordinal != exclude_ordinal
    ]
    scored.sort(key=lambda se: (-se[0], se[1].ordinal))
    return [Neighbor(ordinal=e.ordinal, similarity=sim, label=e.label) for sim, e in scored[:cap]]
