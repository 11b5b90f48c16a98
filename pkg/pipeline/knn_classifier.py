"""k-nearest-neighbour voting over retrieved examples."""
from collections import Counter
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.logging import get_logger
from config.settings import config
from pipeline.similarity_index import Neighbor, SuffixIndex, retrieve
from processing.annotation.encoder import encode_text, resolve_tokenizer
from processing.annotation.tokenizer import Lexicon, Tokenizer
from processing.annotation.units import Method, UnitSequence
from processing.errors import EmptyCorpus, EmptyNeighborList, MethodMismatch
from processing.taxonomy import TamCategory

logger = get_logger("knn_classifier")


class VoteTrace(BaseModel):
    """Everything that went into one decision; serialised by ``classify --explain``."""

    model_config = ConfigDict(frozen=True)

    k_requested: int = Field(ge=1)
    neighbors_used: list[Neighbor] = Field(max_length=config.MAX_CAP)
    tally: dict[TamCategory, int]
    winner: TamCategory
    tie_broken: bool = False

    @model_validator(mode="after")
    def consistent(self) -> "VoteTrace":
        if sum(self.tally.values()) != len(self.neighbors_used):
            raise ValueError("tally must sum to the number of neighbours used")
        if self.tally.get(self.winner, 0) != max(self.tally.values(), default=0):
            raise ValueError("winner must hold the maximal count")
        return self

    @property
    def best_similarity(self) -> int:
        return self.neighbors_used[0].similarity


def select_neighbors(
    ranked: Sequence[Neighbor], k: int, cap: int = config.DEFAULT_CAP
) -> list[Neighbor]:
    """
    Take the first ``k``, extend through every neighbour tied with the k-th,
    then keep at most ``cap`` in ranked order.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 1 <= cap <= config.MAX_CAP:
        raise ValueError(f"cap must be between 1 and {config.MAX_CAP}, got {cap}")
    if not ranked:
        raise EmptyNeighborList()

    end = min(k, len(ranked))
    boundary = ranked[end - 1].similarity
    while end < len(ranked) and ranked[end].similarity == boundary:
        end += 1
    return list(ranked[: min(end, cap)])


def vote(selected: Sequence[Neighbor], k_requested: Optional[int] = None) -> VoteTrace:
    """
    Majority vote. A tie on the top count goes to the label of the earliest
    neighbour carrying one of the tied labels.
    """
    if not selected:
        raise EmptyNeighborList()

    tally = Counter(n.label for n in selected)
    top = max(tally.values())
    leaders = {label for label, count in tally.items() if count == top}
    winner = next(n.label for n in selected if n.label in leaders)

    return VoteTrace(
        k_requested=k_requested or len(selected),
        neighbors_used=list(selected),
        tally=dict(tally),
        winner=winner,
        tie_broken=len(leaders) > 1,
    )


def classify_encoded(
    index: SuffixIndex,
    query: UnitSequence,
    k: int = config.DEFAULT_K,
    cap: int = config.DEFAULT_CAP,
    exclude_ordinal: Optional[int] = None,
) -> VoteTrace:
    """Retrieve, select and vote for an already encoded query."""
    ranked = retrieve(index, query, cap=cap, exclude_ordinal=exclude_ordinal)
    return vote(select_neighbors(ranked, k, cap=cap), k_requested=k)


def classify(
    index: SuffixIndex,
    sentence: str,
    k: int = config.DEFAULT_K,
    method: Method | str | None = None,
    lex: Optional[Lexicon] = None,
    cap: int = config.DEFAULT_CAP,
    exclude_ordinal: Optional[int] = None,
    tokenizer: Optional[Tokenizer] = None,
) -> VoteTrace:
    """
    Encode ``sentence``, retrieve, select and vote.

    ``method`` defaults to the index's own method; passing a different one is
    an error rather than a silent re-encode.
    """
    method = index.method if method is None else Method.parse(method)
    if method is not index.method:
        raise MethodMismatch(index.method, method)
    if len(index) == 0:
        raise EmptyCorpus()

    query = encode_text(sentence, method, resolve_tokenizer(method, lex, tokenizer))
    trace = classify_encoded(index, query, k, cap=cap, exclude_ordinal=exclude_ordinal)
    logger.debug(
        f"{sentence!r}: {len(trace.neighbors_used)} neighbours, winner {trace.winner}"
        + (" (tie broken)" if trace.tie_broken else "")
    )
    return trace
