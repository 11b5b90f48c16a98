"""Hashing utilities for snapshot fingerprints."""

import hashlib
from typing import Iterable

from ingestion.corpus_store import Corpus
from processing.annotation.tokenizer import Lexicon


def hash_strings(values: Iterable[str]) -> str:
    """Compute SHA-256 hash for a sequence of strings.

    Each value is followed by a NUL byte so ``["ab", "c"]`` and ``["a", "bc"]``
    hash differently.
    """
    sha = hashlib.sha256()
    for v in values:
        sha.update(v.encode("utf-8"))
        sha.update(b"\0")
    return f"sha256:{sha.hexdigest()}"


def corpus_fingerprint(corpus: Corpus) -> str:
    """Hash of the pair contents in ordinal order; independent of file format."""
    return hash_strings(
        field for p in corpus for field in (p.japanese, p.english, p.label.value)
    )


def lexicon_fingerprint(lex: Lexicon | None) -> str:
    if lex is None:
        return ""
    return hash_strings(
        field
        for surface in sorted(lex.entries)
        for field in (
            surface,
            lex.entries[surface].category or "-",
            lex.entries[surface].inflection or "-",
        )
    )
