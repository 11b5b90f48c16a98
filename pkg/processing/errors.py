"""Domain errors shared by every stage of the classifier.

All of them are ``ValueError`` subclasses so callers that only care about
"bad input" can catch the builtin.
"""
from typing import Optional


class TamError(ValueError):
    """Base class for data errors; the CLI maps these to exit status 2."""


class UnknownLabel(TamError):
    def __init__(self, text: str, line: Optional[int] = None):
        self.text = text
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"Unknown TAM label{where}: {text!r}")


class FormatError(TamError):
    def __init__(self, reason: str, line: Optional[int] = None):
        self.reason = reason
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class EmptySentence(TamError):
    def __init__(self, message: str = "Sentence is empty"):
        super().__init__(message)


class MethodMismatch(TamError):
    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Method mismatch: expected {expected}, got {actual}")


class EmptyCorpus(TamError):
    def __init__(self, message: str = "Corpus has no example pairs"):
        super().__init__(message)


class EmptyIndex(TamError):
    def __init__(self, message: str = "Suffix index has no entries"):
        super().__init__(message)


class EmptyNeighborList(TamError):
    def __init__(self, message: str = "No neighbors to select from"):
        super().__init__(message)


class Unlabelable(TamError):
    def __init__(self, sentence: str):
        self.sentence = sentence
        super().__init__(f"No recognizable verb in: {sentence!r}")


class EmptyTrainingSet(TamError):
    def __init__(self, message: str = "Training set is empty after removing test sentences"):
        super().__init__(message)
