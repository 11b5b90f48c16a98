import numpy as np
import pytest

from config.settings import config
from ingestion.corpus_store import Corpus, load_corpus
from ingestion.lexicon_source import load_lexicon
from processing.taxonomy import TamCategory

WORKED_INPUT = "彼は私の知り合いだ"
ENCODING_INPUT = "彼は野望を抱いている"

# Labels of the worked example in retrieval order
WORKED_LABELS = [TamCategory.PRESENT_PERFECT, TamCategory.PRESENT, TamCategory.PRESENT_PERFECT] + [
    TamCategory.PRESENT
] * 7


@pytest.fixture(scope="session")
def fixture_lexicon():
    return load_lexicon(config.fixture_lexicon_path)


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(config.CORPUS_DIR / "fixture_corpus.tsv")


@pytest.fixture(scope="session")
def toy_corpus():
    return load_corpus(config.toy_corpus_path)


@pytest.fixture(scope="session")
def toy_lexicon():
    return load_lexicon(config.toy_lexicon_path)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_corpus(rng, size: int, alphabet: str = "あいうえおかきく", max_len: int = 6) -> Corpus:
    """Small-alphabet sentences so shared suffixes and exact ties are common."""
    labels = list(TamCategory)[:4]
    rows = []
    for _ in range(size):
        length = int(rng.integers(1, max_len + 1))
        sentence = "".join(rng.choice(list(alphabet), size=length))
        rows.append((sentence, "gloss", labels[int(rng.integers(len(labels)))]))
    return Corpus.from_records(rows)


def random_sentence(rng, alphabet: str = "あいうえおかきく", max_len: int = 6) -> str:
    length = int(rng.integers(1, max_len + 1))
    return "".join(rng.choice(list(alphabet), size=length))
