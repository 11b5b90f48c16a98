import pytest

from conftest import WORKED_INPUT, WORKED_LABELS, random_corpus, random_sentence
from ingestion.corpus_store import Corpus
from pipeline.similarity_index import (
    SuffixIndex,
    build_index,
    matched_suffix,
    naive_retrieve,
    retrieve,
    suffix_similarity,
)
from processing.annotation.encoder import encode_text, resolve_tokenizer
from processing.annotation.tokenizer import Lexicon
from processing.annotation.units import Method, raw_units
from processing.errors import EmptyCorpus, EmptyIndex, MethodMismatch


@pytest.fixture(scope="module")
def fixture_index(fixture_corpus, fixture_lexicon):
    return build_index(fixture_corpus, Method.ANALYSIS, fixture_lexicon)


def encode(sentence, method=Method.STRING, lex=None):
    return encode_text(sentence, method, resolve_tokenizer(method, lex))


# ----------------- Suffix similarity -----------------


def test_similarity_of_identical_sequences_is_their_length():
    s = raw_units("かれはひとだ")
    assert suffix_similarity(s, s) == 6


def test_similarity_with_no_shared_tail_is_zero():
    assert suffix_similarity(raw_units("ねこ"), raw_units("いぬ")) == 0


def test_similarity_counts_trailing_units():
    a, b = raw_units("彼は人だ"), raw_units("いい人だ")
    assert suffix_similarity(a, b) == 2
    assert [u.payload for u in matched_suffix(a, b)] == ["人", "だ"]


def test_similarity_rejects_mixed_methods(fixture_lexicon):
    with pytest.raises(MethodMismatch):
        suffix_similarity(raw_units("彼"), encode("彼", Method.ANALYSIS, fixture_lexicon))


def test_similarity_is_symmetric_and_bounded(rng):
    for _ in range(300):
        a = raw_units(random_sentence(rng, alphabet="あいう"))
        b = raw_units(random_sentence(rng, alphabet="あいう"))
        n = suffix_similarity(a, b)
        assert n == suffix_similarity(b, a)
        assert 0 <= n <= min(len(a), len(b))
        assert a.units[len(a) - n:] == b.units[len(b) - n:]
        if n < min(len(a), len(b)):
            assert a.units[-1 - n] != b.units[-1 - n]


# ----------------- Worked example -----------------


def test_worked_example_similarities(fixture_index, fixture_lexicon):
    query = encode(WORKED_INPUT, Method.ANALYSIS, fixture_lexicon)
    ranked = retrieve(fixture_index, query, cap=10)
    assert [n.similarity for n in ranked] == [25, 24, 11, 11] + [10] * 6
    assert [n.ordinal for n in ranked] == list(range(10))
    assert [n.label for n in ranked] == WORKED_LABELS


def test_worked_example_matches_naive_scan(fixture_index, fixture_lexicon):
    query = encode(WORKED_INPUT, Method.ANALYSIS, fixture_lexicon)
    assert retrieve(fixture_index, query) == naive_retrieve(fixture_index, query)


def test_smaller_cap_is_a_prefix(fixture_index, fixture_lexicon):
    query = encode(WORKED_INPUT, Method.ANALYSIS, fixture_lexicon)
    full = retrieve(fixture_index, query, cap=10)
    for cap in range(1, 10):
        assert retrieve(fixture_index, query, cap=cap) == full[:cap]


def test_exclusion_removes_one_ordinal(fixture_index, fixture_lexicon):
    query = encode(WORKED_INPUT, Method.ANALYSIS, fixture_lexicon)
    ranked = retrieve(fixture_index, query, exclude_ordinal=0)
    assert [n.ordinal for n in ranked] == list(range(1, 10))


def test_method_1_on_worked_example(fixture_corpus):
    index = build_index(fixture_corpus, Method.STRING)
    ranked = retrieve(index, encode(WORKED_INPUT), cap=10)
    assert ranked[0].ordinal == 0
    assert ranked[0].similarity == len("の知り合いだ")


# ----------------- Index against the naive scan -----------------


def test_index_agrees_with_naive_scan(rng):
    for _ in range(500):
        corpus = random_corpus(rng, size=int(rng.integers(1, 30)))
        index = build_index(corpus, Method.STRING)
        query = raw_units(random_sentence(rng))
        cap = int(rng.integers(1, 12))
        assert retrieve(index, query, cap=cap) == naive_retrieve(index, query, cap=cap)


def test_index_agrees_with_naive_scan_when_excluding(rng):
    for _ in range(300):
        corpus = random_corpus(rng, size=int(rng.integers(2, 25)))
        index = build_index(corpus, Method.STRING)
        held_out = int(rng.integers(len(corpus)))
        query = raw_units(corpus[held_out].japanese)
        got = retrieve(index, query, exclude_ordinal=held_out)
        assert got == naive_retrieve(index, query, exclude_ordinal=held_out)
        assert held_out not in {n.ordinal for n in got}


def random_lexicon(rng, alphabet: str = "あいうえおかきく") -> Lexicon:
    """Short surfaces with colliding codes so category and inflection units tie often."""
    rows = []
    for _ in range(int(rng.integers(3, 12))):
        surface = "".join(rng.choice(list(alphabet), size=int(rng.integers(1, 4))))
        category = None if rng.random() < 0.3 else "".join(rng.choice(list("12"), size=10))
        inflection = [None, "タ形", "基本形"][int(rng.integers(3))]
        rows.append((surface, category, inflection))
    return Lexicon.from_rows(rows)


def test_analysis_index_agrees_with_naive_scan(rng):
    for _ in range(300):
        lex = random_lexicon(rng)
        corpus = random_corpus(rng, size=int(rng.integers(1, 25)))
        index = build_index(corpus, Method.ANALYSIS, lex)
        query = encode(random_sentence(rng), Method.ANALYSIS, lex)
        cap = int(rng.integers(1, 12))
        assert retrieve(index, query, cap=cap) == naive_retrieve(index, query, cap=cap)

        held_out = int(rng.integers(len(corpus)))
        query = encode(corpus[held_out].japanese, Method.ANALYSIS, lex)
        got = retrieve(index, query, exclude_ordinal=held_out)
        assert got == naive_retrieve(index, query, exclude_ordinal=held_out)


def test_retrieval_is_sorted_and_bounded(rng):
    for _ in range(200):
        corpus = random_corpus(rng, size=int(rng.integers(1, 40)), alphabet="あい")
        index = build_index(corpus, Method.STRING)
        query = raw_units(random_sentence(rng, alphabet="あい"))
        ranked = retrieve(index, query)
        assert len(ranked) == min(10, len(corpus))
        keys = [(-n.similarity, n.ordinal) for n in ranked]
        assert keys == sorted(keys)
        for n in ranked:
            assert n.similarity <= len(query)


def test_duplicates_tie_and_keep_corpus_order():
    corpus = Corpus.from_records(
        [("あいう", "x", "Past"), ("かいう", "x", "Present"), ("あいう", "x", "can")]
    )
    index = build_index(corpus, Method.STRING)
    ranked = retrieve(index, raw_units("あいう"))
    assert [(n.ordinal, n.similarity) for n in ranked] == [(0, 3), (2, 3), (1, 2)]


def test_retrieval_is_deterministic(fixture_corpus):
    a = build_index(fixture_corpus, Method.STRING)
    b = build_index(fixture_corpus, Method.STRING)
    query = encode(WORKED_INPUT)
    assert a == b
    assert retrieve(a, query) == retrieve(b, query)


def test_subset_keeps_sorted_order(rng):
    for _ in range(100):
        corpus = random_corpus(rng, size=20)
        index = build_index(corpus, Method.STRING)
        keep = {int(o) for o in rng.choice(20, size=8, replace=False)}
        sub = index.subset(keep)
        assert {e.ordinal for e in sub.entries} == keep
        query = raw_units(random_sentence(rng))
        assert retrieve(sub, query) == naive_retrieve(sub, query)


# ----------------- Errors -----------------


def test_query_method_must_match_index(fixture_index):
    with pytest.raises(MethodMismatch):
        retrieve(fixture_index, raw_units(WORKED_INPUT))


def test_empty_corpus_cannot_be_indexed():
    with pytest.raises(EmptyCorpus):
        build_index(Corpus(), Method.STRING)


def test_empty_index_cannot_be_queried():
    empty = SuffixIndex(entries=(), method=Method.STRING)
    with pytest.raises(EmptyIndex):
        retrieve(empty, raw_units("猫"))
    with pytest.raises(EmptyIndex):
        naive_retrieve(empty, raw_units("猫"))


def test_cap_must_be_positive(fixture_index, fixture_lexicon):
    query = encode(WORKED_INPUT, Method.ANALYSIS, fixture_lexicon)
    with pytest.raises(ValueError):
        retrieve(fixture_index, query, cap=0)


def test_method_2_needs_a_lexicon(fixture_corpus):
    with pytest.raises(ValueError):
        build_index(fixture_corpus, Method.ANALYSIS)
