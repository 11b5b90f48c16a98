import re
from typing import Optional

from processing.annotation.tokenizer import Lexicon, LongestMatchTokenizer, Tokenizer
from processing.annotation.units import Method, UnitSequence, encode_sentence, raw_units
from processing.errors import EmptySentence

TERMINAL_PUNCTUATION = "。．.!?！？"
_TRAILING = re.compile(rf"[{re.escape(TERMINAL_PUNCTUATION)}\s]+$")


def strip_terminal_punctuation(sentence: str) -> str:
    """Drop trailing sentence-final punctuation and whitespace. Idempotent."""
    return _TRAILING.sub("", sentence.strip())


def resolve_tokenizer(
    method: Method,
    lex: Optional[Lexicon] = None,
    tokenizer: Optional[Tokenizer] = None,
) -> Optional[Tokenizer]:
    """Method 2 needs a tokenizer; a lexicon gets the built-in longest-match one."""
    if Method.parse(method) is Method.STRING:
        return None
    if tokenizer is not None:
        return tokenizer
    if lex is None:
        raise ValueError("Method 2 needs a lexicon or a tokenizer")
    return LongestMatchTokenizer(lex)


def encode_text(
    sentence: str,
    method: Method,
    tokenizer: Optional[Tokenizer] = None,
) -> UnitSequence:
    sentence = strip_terminal_punctuation(sentence)
    if not sentence:
        raise EmptySentence()
    if Method.parse(method) is Method.STRING:
        return raw_units(sentence)
    if tokenizer is None:
        raise ValueError("Method 2 needs a tokenizer")
    return encode_sentence(tokenizer.tokenize(sentence))
