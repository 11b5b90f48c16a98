"""
Versioned JSON snapshots of a built ``SuffixIndex``.

A snapshot stores every entry in index order together with fingerprints of
the corpus and lexicon it was built from, so a stale snapshot can be noticed
without re-encoding the corpus. See ``docs/index_format.md``.
"""
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer

from config.logging import get_logger
from config.settings import config
from ingestion.corpus_store import Corpus
from ingestion.interfaces import atomic_write_text
from pipeline.hash_utils import corpus_fingerprint, lexicon_fingerprint
from pipeline.similarity_index import IndexEntry, SuffixIndex
from processing.annotation.tokenizer import Lexicon
from processing.annotation.units import Method, Unit, UnitKind, UnitSequence
from processing.errors import FormatError
from processing.taxonomy import TamCategory

logger = get_logger("artifacts")


class SnapshotEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    ordinal: int = Field(ge=0)
    label: TamCategory
    units: list[tuple[UnitKind, str]]

    @classmethod
    def from_entry(cls, entry: IndexEntry) -> "SnapshotEntry":
        return cls(
            ordinal=entry.ordinal,
            label=entry.label,
            units=[(u.kind, u.payload) for u in entry.units],
        )

    def to_entry(self, method: Method) -> IndexEntry:
        units = tuple(Unit(kind, payload) for kind, payload in self.units)
        return IndexEntry(
            ordinal=self.ordinal,
            label=self.label,
            units=UnitSequence(units=units, provenance=method),
        )


class IndexSnapshot(BaseModel):
    """
    Data Transfer Object for a persisted suffix index.
    """

    version: int = config.INDEX_SNAPSHOT_VERSION
    method: Method
    corpus_fingerprint: str
    lexicon_fingerprint: str = ""
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    entries: list[SnapshotEntry]

    @field_serializer("created_at")
    def serialize_created_at(self, created_at: datetime, _info):
        return created_at.isoformat()

    @classmethod
    def from_index(
        cls, index: SuffixIndex, corpus: Corpus, lex: Optional[Lexicon] = None
    ) -> "IndexSnapshot":
        return cls(
            method=index.method,
            corpus_fingerprint=corpus_fingerprint(corpus),
            lexicon_fingerprint=lexicon_fingerprint(lex) if index.method is Method.ANALYSIS else "",
            entries=[SnapshotEntry.from_entry(e) for e in index.entries],
        )

    def to_index(self) -> SuffixIndex:
        return SuffixIndex(
            entries=tuple(e.to_entry(self.method) for e in self.entries),
            method=self.method,
        )


def save_snapshot(
    index: SuffixIndex, corpus: Corpus, path: str | Path, lex: Optional[Lexicon] = None
) -> Path:
    """Persist ``index`` as JSON using temp-file-then-replace."""
    snapshot = IndexSnapshot.from_index(index, corpus, lex)
    out = atomic_write_text(Path(path), snapshot.model_dump_json(indent=2) + "\n")
    logger.info(f"Saved method-{index.method} index snapshot ({len(index)} entries) to {out}")
    return out


def load_snapshot(
    path: str | Path,
    corpus: Optional[Corpus] = None,
    lex: Optional[Lexicon] = None,
) -> SuffixIndex:
    """
    Load a snapshot back into a ``SuffixIndex``.

    When ``corpus``/``lex`` are given their fingerprints are compared with the
    stored ones and a mismatch is logged as a warning.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        FormatError: On malformed JSON, an unsupported version or bad entries.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Index snapshot not found: {path}")

    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON ({e.msg})", line=e.lineno) from e

    if not isinstance(raw, dict) or raw.get("version") != config.INDEX_SNAPSHOT_VERSION:
        found = raw.get("version") if isinstance(raw, dict) else None
        raise FormatError(
            f"unsupported snapshot version {found!r}; expected {config.INDEX_SNAPSHOT_VERSION}"
        )

    try:
        snapshot = IndexSnapshot.model_validate(raw)
        index = snapshot.to_index()
    except (ValidationError, ValueError) as e:
        raise FormatError(f"invalid snapshot {path.name}: {e}") from e

    if corpus is not None and corpus_fingerprint(corpus) != snapshot.corpus_fingerprint:
        logger.warning(f"Snapshot {path.name} was built from a different corpus")
    if (
        lex is not None
        and snapshot.method is Method.ANALYSIS
        and lexicon_fingerprint(lex) != snapshot.lexicon_fingerprint
    ):
        logger.warning(f"Snapshot {path.name} was built with a different lexicon")

    logger.info(f"Loaded method-{snapshot.method} index snapshot with {len(index)} entries")
    return index
