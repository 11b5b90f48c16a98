"""Lexicon-driven morphological segmentation.

The built-in analyzer is a greedy longest match from the left against a
lexicon of surface forms. Anything a real analyzer can do better is meant to
be plugged in through the ``Tokenizer`` interface.
"""
from abc import ABC, abstractmethod
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from processing.annotation.units import Morpheme
from processing.errors import EmptySentence


class LexiconEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    category: Optional[str] = None
    inflection: Optional[str] = None


class Lexicon(BaseModel):
    """Surface form -> (category code, inflection label)."""

    model_config = ConfigDict(frozen=True)

    entries: dict[str, LexiconEntry] = Field(default_factory=dict)
    _longest: int = PrivateAttr(default=0)

    @model_validator(mode="after")
    def check_entries(self) -> "Lexicon":
        for surface, entry in self.entries.items():
            if not surface:
                raise ValueError("Lexicon surface must be non-empty")
            # Reuse the Morpheme rules for the 10-digit code.
            Morpheme(surface=surface, category=entry.category, inflection=entry.inflection)
        return self

    def model_post_init(self, __context) -> None:
        self._longest = max((len(s) for s in self.entries), default=0)

    @property
    def longest_entry(self) -> int:
        return self._longest

    @classmethod
    def from_rows(cls, rows: list[tuple[str, Optional[str], Optional[str]]]) -> "Lexicon":
        """Build from (surface, category, inflection) rows; the first row for a surface wins."""
        entries: dict[str, LexiconEntry] = {}
        for surface, category, inflection in rows:
            entries.setdefault(
                surface,
                LexiconEntry(
                    category=None if category in (None, "", "-") else category,
                    inflection=None if inflection in (None, "", "-") else inflection,
                ),
            )
        return cls(entries=entries)

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def morpheme(self, surface: str) -> Morpheme:
        entry = self.entries.get(surface)
        if entry is None:
            return Morpheme(surface=surface)
        return Morpheme(surface=surface, category=entry.category, inflection=entry.inflection)


class Tokenizer(ABC):
    """Interface for anything that splits a sentence into annotated morphemes."""

    @abstractmethod
    def tokenize(self, sentence: str) -> list[Morpheme]:
        """Return morphemes whose surfaces concatenate back to ``sentence``."""
        pass


class LongestMatchTokenizer(Tokenizer):
    def __init__(self, lexicon: Lexicon):
        self.lexicon = lexicon

    def tokenize(self, sentence: str) -> list[Morpheme]:
        if not sentence:
            raise EmptySentence()

        morphemes: list[Morpheme] = []
        i = 0
        n = len(sentence)
        while i < n:
            match_len = 1
            for length in range(min(self.lexicon.longest_entry, n - i), 1, -1):
                if sentence[i:i + length] in self.lexicon:
                    match_len = length
                    break
            morphemes.append(self.lexicon.morpheme(sentence[i:i + match_len]))
            i += match_len
        return morphemes


def tokenize(sentence: str, lex: Lexicon) -> list[Morpheme]:
    return LongestMatchTokenizer(lex).tokenize(sentence)
