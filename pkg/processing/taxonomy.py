"""Closed set of tense/aspect/modality categories and their evaluation grouping.

Canonical spellings are the English surface names; the two auxiliaries that
carry their own tense ("be able to", "be going to") get the tense appended in
parentheses. See ``docs/labels.md`` for the published list.
"""
import re
from enum import Enum

from processing.errors import UnknownLabel


class TamCategory(str, Enum):
    """One of the 27 TAM labels. The enum value is the canonical spelling."""

    # Tense/aspect combinations
    PRESENT = "Present"
    PAST = "Past"
    PRESENT_PROGRESSIVE = "Present progressive"
    PAST_PROGRESSIVE = "Past progressive"
    PRESENT_PERFECT = "Present perfect"
    PAST_PERFECT = "Past perfect"
    PRESENT_PERFECT_PROGRESSIVE = "Present perfect progressive"
    PAST_PERFECT_PROGRESSIVE = "Past perfect progressive"

    # Mood
    IMPERATIVE = "Imperative"

    # Auxiliaries
    BE_ABLE_TO_PRESENT = "be able to (Present)"
    BE_ABLE_TO_PAST = "be able to (Past)"
    BE_GOING_TO_PRESENT = "be going to (Present)"
    BE_GOING_TO_PAST = "be going to (Past)"
    CAN = "can"
    COULD = "could"
    HAVE_TO = "have to"
    HAD_TO = "had to"
    LET = "let"
    MAY = "may"
    MIGHT = "might"
    MUST = "must"
    NEED = "need"
    OUGHT = "ought"
    SHALL = "shall"
    SHOULD = "should"
    WILL = "will"
    WOULD = "would"

    def __str__(self) -> str:
        return self.value

    @property
    def identifier(self) -> str:
        """CamelCase name, e.g. ``PresentPerfect`` or ``BeAbleToPresent``."""
        return "".join(part.capitalize() for part in self.name.split("_"))

    @property
    def short_name(self) -> str:
        return SHORT_NAMES[self]

    @property
    def group(self) -> "EvalGroup":
        return eval_group(self)


class EvalGroup(str, Enum):
    PRESENT = "Present"
    PAST = "Past"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


TENSE_ASPECT = (
    TamCategory.PRESENT,
    TamCategory.PAST,
    TamCategory.PRESENT_PROGRESSIVE,
    TamCategory.PAST_PROGRESSIVE,
    TamCategory.PRESENT_PERFECT,
    TamCategory.PAST_PERFECT,
    TamCategory.PRESENT_PERFECT_PROGRESSIVE,
    TamCategory.PAST_PERFECT_PROGRESSIVE,
)
MOODS = (TamCategory.IMPERATIVE,)
AUXILIARIES = tuple(c for c in TamCategory if c not in TENSE_ASPECT and c not in MOODS)

# Column heads of the per-category accuracy table.
SHORT_NAMES: dict[TamCategory, str] = {
    TamCategory.PRESENT: "Pr.",
    TamCategory.PAST: "P.",
    TamCategory.PRESENT_PROGRESSIVE: "Pr.-ing",
    TamCategory.PAST_PROGRESSIVE: "P.-ing",
    TamCategory.PRESENT_PERFECT: "Perf.",
    TamCategory.PAST_PERFECT: "P. Perf.",
    TamCategory.PRESENT_PERFECT_PROGRESSIVE: "Perf.-ing",
    TamCategory.PAST_PERFECT_PROGRESSIVE: "P. Perf.-ing",
    TamCategory.IMPERATIVE: "Imp.",
    TamCategory.BE_ABLE_TO_PRESENT: "be able to",
    TamCategory.BE_ABLE_TO_PAST: "was able to",
    TamCategory.BE_GOING_TO_PRESENT: "be going to",
    TamCategory.BE_GOING_TO_PAST: "was going to",
    **{c: c.value for c in AUXILIARIES[4:]},
}


def _normalize(text: str) -> str:
    return re.sub(r"[\s_\-]+", " ", text).strip().lower()


_LOOKUP: dict[str, TamCategory] = {}
for _category in TamCategory:
    _LOOKUP[_normalize(_category.value)] = _category
    _LOOKUP[_normalize(_category.identifier)] = _category
    _LOOKUP[_normalize(_category.name)] = _category


def parse_label(text: str) -> TamCategory:
    """Parse a label string into a category.

    Matching is case-insensitive and tolerant of ``_``/``-``/whitespace runs.
    Canonical spellings, CamelCase identifiers and enum names are accepted.

    Raises:
        UnknownLabel: If nothing in the closed set matches.
    """
    if text is None:
        raise UnknownLabel("")
    found = _LOOKUP.get(_normalize(str(text)))
    if found is None:
        raise UnknownLabel(str(text))
    return found


def eval_group(category: TamCategory) -> EvalGroup:
    if category is TamCategory.PRESENT:
        return EvalGroup.PRESENT
    if category is TamCategory.PAST:
        return EvalGroup.PAST
    return EvalGroup.OTHER
