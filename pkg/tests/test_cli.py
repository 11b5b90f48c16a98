import io
import json

import pytest

from conftest import WORKED_INPUT
from config.settings import config
from main import EXIT_DATA, EXIT_OK, EXIT_USAGE, run

FIXTURE_CORPUS = str(config.CORPUS_DIR / "fixture_corpus.tsv")
FIXTURE_LEXICON = str(config.fixture_lexicon_path)
TOY_CORPUS = str(config.toy_corpus_path)
TOY_LEXICON = str(config.toy_lexicon_path)


def invoke(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def classify_fixture(*extra, stdin=WORKED_INPUT + "\n"):
    return invoke(
        "classify",
        "--corpus", FIXTURE_CORPUS,
        "--lexicon", FIXTURE_LEXICON,
        "--method", "2",
        *extra,
        stdin=stdin,
    )


# ----------------- classify -----------------


def test_classify_worked_example():
    code, out, _ = classify_fixture("--k", "5")
    assert code == EXIT_OK
    assert out == "Present\n"


def test_classify_k1_picks_the_closest_example():
    code, out, _ = classify_fixture("--k", "1")
    assert code == EXIT_OK
    assert out == "Present perfect\n"


def test_classify_explain_appends_trace():
    code, out, _ = classify_fixture("--explain")
    label, trace_json = out.rstrip("\n").split("\t")
    trace = json.loads(trace_json)
    assert label == "Present"
    assert [n["similarity"] for n in trace["neighbors_used"]] == [25, 24, 11, 11] + [10] * 6
    assert trace["tally"] == {"Present perfect": 2, "Present": 8}
    assert len(trace["matched"]) == 10


def test_classify_json_output():
    code, out, _ = classify_fixture("--format", "json", stdin="彼は私の知り合いだ。\n彼は人だ\n")
    results = json.loads(out)
    assert code == EXIT_OK
    assert [r["sentence"] for r in results] == ["彼は私の知り合いだ。", "彼は人だ"]
    assert all(r["label"] for r in results)


def test_classify_from_saved_index(tmp_path):
    snapshot = tmp_path / "index.json"
    code, _, _ = invoke(
        "index",
        "--corpus", FIXTURE_CORPUS,
        "--lexicon", FIXTURE_LEXICON,
        "--method", "2",
        "--output", str(snapshot),
    )
    assert code == EXIT_OK and snapshot.exists()

    code, out, _ = classify_fixture("--index", str(snapshot))
    assert code == EXIT_OK
    assert out == "Present\n"


def test_index_json_summary(tmp_path):
    snapshot = tmp_path / "index.json"
    code, out, _ = invoke(
        "index", "--corpus", FIXTURE_CORPUS, "--output", str(snapshot), "--format", "json"
    )
    assert code == EXIT_OK
    assert json.loads(out) == {"path": str(snapshot), "method": "1", "entries": 10}


def test_method_2_without_lexicon_is_a_usage_error():
    code, out, err = invoke("classify", "--corpus", FIXTURE_CORPUS, "--method", "2", stdin="猫\n")
    assert code == EXIT_USAGE
    assert out == ""
    assert "--lexicon" in err


def test_punctuation_only_line_fails_before_any_output():
    code, out, err = classify_fixture("--k", "5", stdin=f"{WORKED_INPUT}\n。\n")
    assert code == EXIT_DATA
    assert out == ""
    assert "'。'" in err


@pytest.mark.parametrize("argv", [["--help"], ["classify", "--help"]])
def test_help_goes_to_the_given_stdout(argv, capsys):
    code, out, _ = invoke(*argv)
    assert code == EXIT_OK
    assert "usage:" in out
    assert capsys.readouterr().out == ""


# ----------------- usage and data errors -----------------


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--corpus", FIXTURE_CORPUS, "--bogus"],
        ["evaluate", "--corpus", FIXTURE_CORPUS, "--k", "0"],
        ["classify", "--corpus", FIXTURE_CORPUS, "--k", "20", "--cap", "20"],
        ["evaluate", "--corpus", FIXTURE_CORPUS, "--cap", "0"],
        ["evaluate", "--corpus", FIXTURE_CORPUS, "--method", "3"],
        ["evaluate", "--corpus", FIXTURE_CORPUS, "--loo", "--split"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_1(argv):
    code, out, err = invoke(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert "usage:" in err


def test_missing_corpus_is_a_data_error(tmp_path):
    code, out, err = invoke("evaluate", "--corpus", str(tmp_path / "nope.tsv"))
    assert code == EXIT_DATA
    assert out == ""
    assert "nope.tsv" in err


def test_unknown_label_is_a_data_error(tmp_path):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("猫だ\tA cat.\tPresent\n犬だ\tA dog.\tPluperfect\n", encoding="utf-8")
    code, _, err = invoke("validate", "--corpus", str(corpus))
    assert code == EXIT_DATA
    assert "line 2" in err


def test_label_missing_flag_uses_the_english_side(tmp_path):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("猫だ\tIt is a cat.\n雨が降った\tIt rained.\n", encoding="utf-8")
    code, out, _ = invoke("validate", "--corpus", str(corpus), "--label-missing", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["label_histogram"] == {"Present": 1, "Past": 1}


# ----------------- evaluate -----------------


def test_evaluate_is_deterministic():
    argv = ["evaluate", "--corpus", TOY_CORPUS, "--lexicon", TOY_LEXICON, "--method", "2"]
    first = invoke(*argv)
    second = invoke(*argv)
    assert first[0] == EXIT_OK
    assert first[1] == second[1]
    assert "Method 2(k=5)" in first[1]


def test_evaluate_json_report():
    code, out, _ = invoke("evaluate", "--corpus", TOY_CORPUS, "--format", "json", "--k", "3")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["protocol"] == "loo"
    assert report["k"] == 3
    assert report["overall"]["total"] == len(report["per_sentence"])


def test_evaluate_split_records_seed():
    argv = ["evaluate", "--corpus", TOY_CORPUS, "--split", "--test-size", "8", "--seed", "4"]
    code, out, _ = invoke(*argv, "--format", "json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["seed"] == 4
    assert report["overall"]["total"] == 8
    assert invoke(*argv, "--format", "json")[1] == out


def test_evaluate_sweep_table():
    code, out, _ = invoke("evaluate", "--corpus", TOY_CORPUS, "--lexicon", TOY_LEXICON, "--sweep")
    assert code == EXIT_OK
    for method in ("1", "2"):
        for k in (1, 3, 5, 7, 9):
            assert f"Method {method}(k={k})" in out


def test_evaluate_without_self_exclusion():
    code, out, _ = invoke(
        "evaluate", "--corpus", TOY_CORPUS, "--no-exclude-self", "--k", "1", "--format", "json"
    )
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["exclude_self"] is False
    assert report["overall"]["correct"] == report["overall"]["total"]


# ----------------- label / validate -----------------


def test_label_subcommand():
    code, out, _ = invoke("label", stdin="It rained.\nHello there.\nYou can swim.\n")
    assert code == EXIT_OK
    assert out.splitlines() == ["It rained.\tPast", "Hello there.\t-", "You can swim.\tcan"]


def test_label_json():
    code, out, _ = invoke("label", "--format", "json", stdin="Hello there.\n")
    assert code == EXIT_OK
    assert json.loads(out) == [{"sentence": "Hello there.", "label": None}]


def test_validate_clean_corpus():
    code, out, _ = invoke("validate", "--corpus", TOY_CORPUS)
    assert code == EXIT_OK
    assert "No issues." in out


def test_validate_reports_errors(tmp_path):
    corpus = tmp_path / "c.jsonl"
    corpus.write_text(
        '{"japanese": "猫だ", "english": "", "label": "Present"}\n'
        '{"japanese": "猫だ", "english": "A cat.", "label": "Present"}\n',
        encoding="utf-8",
    )
    code, out, _ = invoke("validate", "--corpus", str(corpus), "--format", "json")
    report = json.loads(out)
    assert code == EXIT_DATA
    assert {i["code"] for i in report["issues"]} == {"duplicate_japanese", "empty_english"}
