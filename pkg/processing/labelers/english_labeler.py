"""
Rule-based TAM labelling of English sentences.

Used to bootstrap labels for bilingual corpora that only carry the English
translation. Rules fire in priority order and the first one that matches
decides:

    1. modal auxiliaries and the periphrastic ones (have to, be able to, ...)
    2. have/has/had + past participle (perfect, perfect progressive via "been")
    3. be + -ing (progressive)
    4. sentence-initial base verb without a subject (imperative)
    5. tense of the first finite verb (past or present)

Word lists live under ``data/labeler/`` and are plain UTF-8, one entry per line.
"""
import re
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict

from config.logging import get_logger
from config.settings import config
from processing.errors import Unlabelable
from processing.taxonomy import TamCategory, parse_label

logger = get_logger("english_labeler")

BE_PRESENT = frozenset({"am", "is", "are"})
BE_PAST = frozenset({"was", "were"})
HAVE_PRESENT = frozenset({"have", "has"})
DO_PRESENT = frozenset({"do", "does"})

SUBJECT_PRONOUNS = frozenset({"i", "you", "he", "she", "it", "we", "they"})
# A token after one of these is not in subject position.
NON_SUBJECT_PRECEDERS = frozenset({
    "the", "a", "an", "my", "your", "his", "her", "its", "our", "their",
    "this", "that", "these", "those", "some", "any", "no", "every", "each",
    "to", "of", "for", "in", "on", "at", "with", "by", "from", "about", "into",
})
CLITIC_HOSTS = frozenset({
    "he", "she", "it", "that", "what", "who", "there", "here", "where", "how",
})

_TOKEN = re.compile(r"[a-z]+(?:[-'][a-z]+)*")


class LabelerRuleSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    modals: dict[str, TamCategory]
    contractions: list[tuple[str, str]]
    skippable_adverbs: frozenset[str]
    irregular_past: frozenset[str]
    irregular_participles: frozenset[str]
    base_verbs: frozenset[str]
    non_progressive_ing: frozenset[str]
    non_verbs: frozenset[str]

    @classmethod
    def from_directory(cls, directory: str | Path) -> "LabelerRuleSet":
        directory = Path(directory)
        return cls(
            modals={w: parse_label(c) for w, c in _read_pairs(directory / "modals.tsv")},
            contractions=_read_pairs(directory / "contractions.tsv"),
            skippable_adverbs=frozenset(_read_words(directory / "adverbs.txt")),
            irregular_past=frozenset(_read_words(directory / "irregular_past.txt")),
            irregular_participles=frozenset(_read_words(directory / "irregular_participles.txt")),
            base_verbs=frozenset(_read_words(directory / "base_verbs.txt")),
            non_progressive_ing=frozenset(_read_words(directory / "non_progressive_ing.txt")),
            non_verbs=frozenset(_read_words(directory / "non_verbs.txt")),
        )


def _data_lines(path: Path) -> list[str]:
    lines = path.read_text(encoding="utf-8").splitlines()
    return [ln for ln in lines if ln.strip() and not ln.startswith("#")]


def _read_words(path: Path) -> list[str]:
    return [ln.strip().lower() for ln in _data_lines(path)]


def _read_pairs(path: Path) -> list[tuple[str, str]]:
    pairs = []
    for ln in _data_lines(path):
        left, _, right = ln.partition("\t")
        # Expansions may carry a meaningful leading space.
        pairs.append((left.strip().lower(), right.rstrip("\n")))
    return pairs


@lru_cache(maxsize=1)
def default_rules() -> LabelerRuleSet:
    return LabelerRuleSet.from_directory(config.labeler_dir)


class EnglishLabeler:
    """Callable wrapper so a rule set can be handed to ``load_corpus`` as a fallback."""

    def __init__(self, rules: Optional[LabelerRuleSet] = None):
        self.rules = rules or default_rules()

    def __call__(self, sentence: str) -> TamCategory:
        return label_english(sentence, self.rules)

    # -- word classes ---------------------------------------------------------

    def is_regular_ed(self, w: str) -> bool:
        r = self.rules
        return (
            w.endswith("ed")
            and len(w) > 3
            and "-" not in w
            and w not in r.base_verbs
            and w not in r.non_verbs
        )

    def is_participle(self, w: str) -> bool:
        return w in self.rules.irregular_participles or self.is_regular_ed(w)

    def is_past(self, w: str) -> bool:
        return w in self.rules.irregular_past or self.is_regular_ed(w)

    def is_ing(self, w: str) -> bool:
        return (
            w.endswith("ing")
            and len(w) >= 5
            and "-" not in w
            and w not in self.rules.non_progressive_ing
        )

    def is_present_form(self, w: str) -> bool:
        r = self.rules
        if w in r.non_verbs:
            return False
        if w in r.base_verbs:
            return True
        if w.endswith("ies") and w[:-3] + "y" in r.base_verbs:
            return True
        if w.endswith("es") and w[:-2] in r.base_verbs:
            return True
        return w.endswith("s") and w[:-1] in r.base_verbs

    # -- tokenisation -----------------------------------------------------------

    def tokens(self, sentence: str) -> list[str]:
        text = sentence.lower().replace("’", "'").replace("‘", "'")
        for contraction, expansion in self.rules.contractions:
            if contraction.startswith("-"):
                text = text.replace(contraction[1:], expansion)
            else:
                text = re.sub(rf"\b{re.escape(contraction)}\b", expansion, text)

        raw = _TOKEN.findall(text)
        tokens: list[str] = []
        for i, tok in enumerate(raw):
            if tok.endswith("'s") or tok.endswith("'d"):
                host, clitic = tok[:-2], tok[-1]
                tokens.append(host)
                if clitic == "s" and host not in CLITIC_HOSTS:
                    continue  # possessive
                nxt = self._next_content(raw, i + 1)
                tokens.append(self._expand_clitic(clitic, nxt))
            else:
                tokens.append(tok.replace("'", ""))
        return tokens

    def _next_content(self, raw: list[str], start: int) -> Optional[str]:
        for tok in raw[start:]:
            if tok not in self.rules.skippable_adverbs:
                return tok
        return None

    def _expand_clitic(self, clitic: str, nxt: Optional[str]) -> str:
        if clitic == "s":
            r = self.rules
            if nxt is not None and (
                nxt in ("been", "got")
                or (nxt in r.irregular_participles and nxt not in r.irregular_past)
            ):
                return "has"
            return "is"
        return "had" if nxt is not None and self.is_participle(nxt) else "would"

    def _skip_adverbs(self, tokens: list[str], i: int) -> int:
        while i < len(tokens) and tokens[i] in self.rules.skippable_adverbs:
            i += 1
        return i

    # -- rules ----------------------------------------------------------------

    def modal(self, tokens: list[str]) -> Optional[TamCategory]:
        r = self.rules
        for i, w in enumerate(tokens):
            prev = tokens[i - 1] if i else None
            if prev in NON_SUBJECT_PRECEDERS:
                continue
            j = self._skip_adverbs(tokens, i + 1)
            nxt = tokens[j] if j < len(tokens) else None

            if w in r.modals:
                return r.modals[w]
            if w == "let" and (i == 0 or prev == "please"):
                return TamCategory.LET
            # "not" is skippable, so look at the raw next token for "need not"
            if w in ("need", "needs", "needed") and (
                nxt == "to" or tokens[i + 1:i + 2] == ["not"]
            ):
                return TamCategory.NEED
            if w in HAVE_PRESENT and nxt == "to":
                return TamCategory.HAVE_TO
            if w == "had" and nxt == "to":
                return TamCategory.HAD_TO
            if w in BE_PRESENT or w in BE_PAST:
                past = w in BE_PAST
                if nxt == "able" and j + 1 < len(tokens) and tokens[j + 1] == "to":
                    return TamCategory.BE_ABLE_TO_PAST if past else TamCategory.BE_ABLE_TO_PRESENT
                if (
                    nxt == "going"
                    and j + 2 < len(tokens)
                    and tokens[j + 1] == "to"
                    and tokens[j + 2] in r.base_verbs
                ):
                    return (
                        TamCategory.BE_GOING_TO_PAST if past else TamCategory.BE_GOING_TO_PRESENT
                    )
        return None

    def perfect(self, tokens: list[str]) -> Optional[TamCategory]:
        for i, w in enumerate(tokens):
            if w not in HAVE_PRESENT and w != "had":
                continue
            past = w == "had"
            j = self._skip_adverbs(tokens, i + 1)
            if j >= len(tokens) or not self.is_participle(tokens[j]):
                continue
            if tokens[j] == "been":
                k = self._skip_adverbs(tokens, j + 1)
                if k < len(tokens) and self.is_ing(tokens[k]):
                    return (
                        TamCategory.PAST_PERFECT_PROGRESSIVE
                        if past
                        else TamCategory.PRESENT_PERFECT_PROGRESSIVE
                    )
            return TamCategory.PAST_PERFECT if past else TamCategory.PRESENT_PERFECT
        return None

    def progressive(self, tokens: list[str]) -> Optional[TamCategory]:
        for i, w in enumerate(tokens):
            if w not in BE_PRESENT and w not in BE_PAST:
                continue
            j = self._skip_adverbs(tokens, i + 1)
            if j < len(tokens) and self.is_ing(tokens[j]):
                if w in BE_PAST:
                    return TamCategory.PAST_PROGRESSIVE
                return TamCategory.PRESENT_PROGRESSIVE
        return None

    def imperative(self, tokens: list[str]) -> Optional[TamCategory]:
        i = 0
        if i < len(tokens) and tokens[i] == "please":
            i += 1
        if tokens[i:i + 2] == ["do", "not"] or tokens[i:i + 1] == ["never"]:
            i += 2 if tokens[i] == "do" else 1
        if i >= len(tokens) or tokens[i] not in self.rules.base_verbs:
            return None

        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if nxt is not None and (
            nxt in SUBJECT_PRONOUNS - {"it"}
            or nxt in BE_PRESENT
            or nxt in BE_PAST
            or nxt in HAVE_PRESENT
            or nxt in self.rules.modals
            or (nxt != "please" and self.is_present_form(nxt) and nxt.endswith("s"))
        ):
            return None
        return TamCategory.IMPERATIVE

    def finite_tense(self, tokens: list[str]) -> Optional[TamCategory]:
        for i, w in enumerate(tokens):
            if w in BE_PRESENT or w in HAVE_PRESENT or w in DO_PRESENT:
                return TamCategory.PRESENT
            if w in BE_PAST or w in ("had", "did"):
                return TamCategory.PAST

            prev = tokens[i - 1] if i else None
            if prev is None or prev in NON_SUBJECT_PRECEDERS:
                continue
            if self.is_past(w):
                return TamCategory.PAST
            if self.is_present_form(w):
                return TamCategory.PRESENT
        return None


def label_english(sentence: str, rules: Optional[LabelerRuleSet] = None) -> TamCategory:
    """
    Assign one of the 27 TAM categories to ``sentence``.

    Raises:
        Unlabelable: When no rule finds a verb.
    """
    labeler = EnglishLabeler(rules)
    tokens = labeler.tokens(sentence)
    if not tokens:
        raise Unlabelable(sentence)

    for rule in (
        labeler.modal,
        labeler.perfect,
        labeler.progressive,
        labeler.imperative,
        labeler.finite_tense,
    ):
        found = rule(tokens)
        if found is not None:
            logger.debug(f"{sentence!r} -> {found} via {rule.__name__}")
            return found

    raise Unlabelable(sentence)
