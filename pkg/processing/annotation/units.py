"""Comparison units and the two sentence encodings.

Method 1 compares raw characters. Method 2 compares an annotated string built
from morphemes: surface characters, the thesaurus category (digits 6-7 as one
pair unit, then digits 1-5 reversed as single-digit units), the inflection
label characters and a delimiter closing each morpheme block. Because the top
five digits are reversed, matching from the end of the sentence reaches the
coarse hierarchy levels first.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, field_validator

from processing.errors import EmptySentence

DELIMITER_GLYPH = "："
_FULLWIDTH_DIGITS = str.maketrans("0123456789", "０１２３４５６７８９")


class Method(str, Enum):
    STRING = "1"
    ANALYSIS = "2"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: "str | int | Method") -> "Method":
        """Accepts ``1``/``2`` and the aliases ``string``/``analysis``."""
        if isinstance(text, Method):
            return text
        key = str(text).strip().lower()
        aliases = {
            "1": cls.STRING,
            "string": cls.STRING,
            "method1": cls.STRING,
            "2": cls.ANALYSIS,
            "analysis": cls.ANALYSIS,
            "method2": cls.ANALYSIS,
        }
        if key not in aliases:
            raise ValueError(f"Unknown method {text!r}; expected 1, 2, string or analysis")
        return aliases[key]


class UnitKind(str, Enum):
    SURFACE_CHAR = "S"
    CATEGORY_PAIR = "P"
    CATEGORY_DIGIT = "D"
    INFLECTION_CHAR = "I"
    DELIMITER = "|"


@dataclass(frozen=True, order=True, slots=True)
class Unit:
    """One comparison atom. Equality is kind + payload."""

    kind: UnitKind
    payload: str = ""

    def __post_init__(self):
        if self.kind is UnitKind.CATEGORY_PAIR:
            if len(self.payload) != 2 or not self.payload.isdigit():
                raise ValueError(f"Category pair needs two digits, got {self.payload!r}")
        elif self.kind is UnitKind.CATEGORY_DIGIT:
            if len(self.payload) != 1 or not self.payload.isdigit():
                raise ValueError(f"Category digit needs one digit, got {self.payload!r}")
        elif self.kind is UnitKind.DELIMITER:
            if self.payload:
                raise ValueError("Delimiter carries no payload")
        elif len(self.payload) != 1:
            raise ValueError(f"{self.kind.name} needs exactly one character")

    def render(self) -> str:
        if self.kind is UnitKind.DELIMITER:
            return DELIMITER_GLYPH
        if self.kind is UnitKind.CATEGORY_DIGIT:
            return self.payload.translate(_FULLWIDTH_DIGITS)
        return self.payload


DELIMITER = Unit(UnitKind.DELIMITER)


@dataclass(frozen=True, slots=True)
class UnitSequence:
    units: tuple[Unit, ...]
    provenance: Method

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self):
        return iter(self.units)

    def reversed_key(self) -> tuple[Unit, ...]:
        return self.units[::-1]

    def render(self) -> str:
        return "".join(u.render() for u in self.units)


class Morpheme(BaseModel):
    """Surface form with an optional 10-digit category and inflection label."""

    model_config = ConfigDict(frozen=True)

    surface: str
    category: Optional[str] = None
    inflection: Optional[str] = None

    @field_validator("surface")
    @classmethod
    def surface_not_empty(cls, v: str) -> str:
        if not v:
            raise ValueError("Morpheme surface must be non-empty")
        return v

    @field_validator("category", mode="before")
    @classmethod
    def ten_digits(cls, v):
        if v in (None, "", "-"):
            return None
        v = str(v)
        if len(v) != 10 or not v.isdigit():
            raise ValueError(f"Category must be exactly 10 digits, got {v!r}")
        return v

    @field_validator("inflection", mode="before")
    @classmethod
    def blank_inflection(cls, v):
        return None if v in (None, "", "-") else str(v)


def raw_units(sentence: str) -> UnitSequence:
    """Method 1: one surface unit per character."""
    if not sentence:
        raise EmptySentence()
    return UnitSequence(
        units=tuple(Unit(UnitKind.SURFACE_CHAR, ch) for ch in sentence),
        provenance=Method.STRING,
    )


def annotate_morpheme(m: Morpheme) -> list[Unit]:
    units = [Unit(UnitKind.SURFACE_CHAR, ch) for ch in m.surface]

    if m.category is not None:
        # Digits 8-10 are never emitted.
        units.append(Unit(UnitKind.CATEGORY_PAIR, m.category[5:7]))
        units.extend(Unit(UnitKind.CATEGORY_DIGIT, d) for d in reversed(m.category[:5]))

    if m.inflection is not None:
        units.extend(Unit(UnitKind.INFLECTION_CHAR, ch) for ch in m.inflection)

    units.append(DELIMITER)
    return units


def encode_sentence(morphemes: Sequence[Morpheme]) -> UnitSequence:
    """Method 2: concatenated morpheme blocks in sentence order."""
    if not morphemes:
        raise EmptySentence("Cannot encode an empty morpheme list")
    units: list[Unit] = []
    for m in morphemes:
        units.extend(annotate_morpheme(m))
    return UnitSequence(units=tuple(units), provenance=Method.ANALYSIS)


def render_units(units: Iterable[Unit]) -> str:
    return "".join(u.render() for u in units)
