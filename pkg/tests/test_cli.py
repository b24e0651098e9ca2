"""
Tests for the command line interface
"""

import orjson
import pytest
from click.testing import CliRunner

from cli import cli
from tests.conftest import FIXTURES

MINI = str(FIXTURES / "mini.txt")
OOP = str(FIXTURES / "oop.txt")
OOP_DEFINITION = (
    "Object Oriented Programming (OOP) is a paradigm shift in programming which defines, "
    "creates, and manipulates objects to develop reusable software."
)


@pytest.fixture
def runner():
    return CliRunner()


def summary_sentences(stdout: str):
    return stdout.rstrip("\n").split("\n\n") if stdout else []


class TestSummarize:
    def test_mini_k2(self, runner):
        result = runner.invoke(cli, ["summarize", MINI, "--k", "2"])
        assert result.exit_code == 0
        assert result.stdout == "Green tea has many health benefits.\n\nTea, especially green tea, is popular.\n"

    def test_oop_default_ratio(self, runner):
        result = runner.invoke(cli, ["summarize", OOP])
        assert result.exit_code == 0
        sentences = summary_sentences(result.stdout)
        assert len(sentences) == 6
        assert sentences[0] == OOP_DEFINITION

    def test_html_summary_never_uses_comments(self, runner):
        result = runner.invoke(cli, ["summarize", str(FIXTURES / "oop.html"), "--k", "40", "--include-zero"])
        assert result.exit_code == 0
        assert len(summary_sentences(result.stdout)) == 29
        assert "totally agree" not in result.stdout
        assert "Object programs rule" not in result.stdout

    def test_document_order(self, runner):
        result = runner.invoke(cli, ["summarize", OOP, "--order", "document"])
        assert result.exit_code == 0
        assert summary_sentences(result.stdout)[-1] == OOP_DEFINITION

    def test_record_output(self, runner):
        result = runner.invoke(cli, ["summarize", str(FIXTURES / "mini.json"), "--k", "2", "--output", "record"])
        assert result.exit_code == 0
        record = orjson.loads(result.stdout)
        assert record["source_id"] == "blog://mini/green-tea"
        assert record["k"] == 2
        assert record["variant"] == "literal"
        assert record["ordering"] == "score"
        assert record["title_terms"] == ["green", "tea", "benefit"]
        assert [(s["index"], s["score"], s["distinct_hits"]) for s in record["sentences"]] == [(1, 3, 3), (3, 3, 2)]

    def test_record_output_coverage_scores(self, runner):
        result = runner.invoke(cli, ["summarize", OOP, "--variant", "coverage", "--output", "record"])
        record = orjson.loads(result.stdout)
        assert [s["score_exact"] for s in record["sentences"]] == ["5", "2", "4/3", "4/3", "2/3", "2/3"]

    def test_summary_text_is_verbatim(self, runner):
        body = (FIXTURES / "oop.txt").read_text(encoding="utf-8")
        result = runner.invoke(cli, ["summarize", OOP, "--ratio", "1.0", "--include-zero"])
        for sentence in summary_sentences(result.stdout):
            assert sentence in body

    def test_wrapped_sentence_printed_verbatim(self, runner, tmp_path):
        page = tmp_path / "wrapped.txt"
        body = "Green tea is grown in\nChina and Japan. Coffee is not."
        page.write_text("Green Tea\n\n" + body + "\n", encoding="utf-8")
        result = runner.invoke(cli, ["summarize", str(page), "--k", "1"])
        assert result.exit_code == 0
        assert result.stdout == "Green tea is grown in\nChina and Japan.\n"
        assert summary_sentences(result.stdout)[0] in body

    def test_batch_keeps_argument_order_and_reports_failures(self, runner):
        empty = str(FIXTURES / "empty.txt")
        result = runner.invoke(cli, ["summarize", MINI, empty, OOP, "--k", "1", "--workers", "3"])
        assert result.exit_code == 1
        assert result.stdout == (
            f"==> {MINI} <==\n"
            "Green tea has many health benefits.\n"
            "\n"
            f"==> {OOP} <==\n"
            f"{OOP_DEFINITION}\n"
        )
        assert f"{empty}: malformed-input:" in result.stderr

    def test_empty_file(self, runner):
        result = runner.invoke(cli, ["summarize", str(FIXTURES / "empty.txt")])
        assert result.exit_code == 1
        assert "malformed-input" in result.stderr
        assert result.stdout == ""

    def test_deterministic(self, runner):
        inputs = [MINI, OOP, str(FIXTURES / "oop.html"), str(FIXTURES / "mini.json")]
        first = runner.invoke(cli, ["summarize", *inputs, "--output", "record", "--workers", "4"])
        second = runner.invoke(cli, ["summarize", *inputs, "--output", "record", "--workers", "1"])
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout
        assert len(first.stdout.splitlines()) == 4

    @pytest.mark.parametrize(
        "args",
        [
            ["--k", "2", "--ratio", "0.5"],
            ["--k", "0"],
            ["--ratio", "1.5"],
            ["--variant", "fancy"],
            ["--stopwords", "/no/such/stoplist.txt"],
            ["--comment-selector", "   "],
            ["--workers", "0"],
        ],
    )
    def test_bad_invocation(self, runner, args):
        result = runner.invoke(cli, ["summarize", MINI, *args])
        assert result.exit_code == 2

    def test_no_h1_title(self, runner, tmp_path):
        page = tmp_path / "page.html"
        page.write_text("<html><body><h1>Green Tea</h1><p>Green tea is good.</p></body></html>", encoding="utf-8")
        assert runner.invoke(cli, ["summarize", str(page)]).exit_code == 0
        result = runner.invoke(cli, ["summarize", str(page), "--no-h1-title"])
        assert result.exit_code == 1
        assert "missing-title" in result.stderr

    def test_custom_stoplist_and_no_lexicon(self, runner, tmp_path):
        stoplist = tmp_path / "stop.txt"
        stoplist.write_text("green\n", encoding="utf-8")
        result = runner.invoke(
            cli, ["summarize", MINI, "--k", "3", "--stopwords", str(stoplist), "--no-lexicon", "--output", "record"]
        )
        assert orjson.loads(result.stdout)["title_terms"] == ["tea", "benefit"]


class TestMatrices:
    def test_mini_grids(self, runner):
        result = runner.invoke(cli, ["matrices", MINI])
        assert result.exit_code == 0
        assert result.stdout == (
            "# TSM\n"
            "term\t1\t2\t3\n"
            "green\t1\t0\t1\n"
            "tea\t1\t0\t2\n"
            "benefit\t1\t0\t0\n"
            "# PFM\n"
            "term\t1\t2\t3\n"
            "green\t1\t0\t1\n"
            "tea\t1\t0\t1\n"
            "benefit\t1\t0\t0\n"
        )

    def test_single_sentence_without_title_terms(self, runner):
        result = runner.invoke(cli, ["matrices", str(FIXTURES / "single_absent.txt")])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[:5] == ["# TSM", "term\t1", "green\t0", "tea\t0", "benefit\t0"]

    def test_oop_rows(self, runner):
        result = runner.invoke(cli, ["matrices", OOP])
        rows = [line.split("\t")[0] for line in result.stdout.splitlines()[2:5]]
        assert rows == ["object", "orient", "program"]

    def test_missing_input(self, runner, tmp_path):
        result = runner.invoke(cli, ["matrices", str(tmp_path / "absent.txt")])
        assert result.exit_code == 1
        assert "malformed-input" in result.stderr


class TestEvaluate:
    def test_six_of_seven(self, runner):
        result = runner.invoke(
            cli,
            ["evaluate", str(FIXTURES / "candidate_six_of_seven.txt"), "--model", str(FIXTURES / "model_seven.txt")],
        )
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "P 85.7% R 85.7%"

    def test_identical_files(self, runner):
        model = str(FIXTURES / "model_seven.txt")
        result = runner.invoke(cli, ["evaluate", model, "--model", model])
        assert result.stdout.splitlines()[0] == "P 100.0% R 100.0%"

    def test_disjoint_files(self, runner):
        result = runner.invoke(
            cli, ["evaluate", str(FIXTURES / "candidate_disjoint.txt"), "--model", str(FIXTURES / "model_seven.txt")]
        )
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "P 0.0% R 0.0%"

    def test_empty_model(self, runner):
        result = runner.invoke(
            cli, ["evaluate", str(FIXTURES / "model_seven.txt"), "--model", str(FIXTURES / "empty.txt")]
        )
        assert result.exit_code == 1
        assert "empty-model-summary" in result.stderr

    def test_inline_sentences(self, runner):
        result = runner.invoke(
            cli, ["evaluate", "--model", str(FIXTURES / "model_seven.txt"), "-s", "Alpha one is here.", "-s", "Nope."]
        )
        assert result.stdout.splitlines()[0] == "P 50.0% R 14.3%"

    def test_candidate_and_inline_are_exclusive(self, runner):
        model = str(FIXTURES / "model_seven.txt")
        assert runner.invoke(cli, ["evaluate", model, "--model", model, "-s", "A."]).exit_code == 2
        assert runner.invoke(cli, ["evaluate", "--model", model]).exit_code == 2

    def test_document_candidate(self, runner):
        result = runner.invoke(
            cli,
            [
                "evaluate", OOP, "--candidate-kind", "document",
                "--model", str(FIXTURES / "oop_model_summary.txt"), "--output", "record",
            ],
        )
        assert result.exit_code == 0
        report = orjson.loads(result.stdout)
        assert (report["n_common"], report["n_sum"], report["n_msum"]) == (2, 6, 5)
        assert report["precision"] == "1/3"
        assert report["recall_pct"] == "40.0"
        assert report["matched_pairs"] == [[1, 5], [2, 4]]

    def test_record_candidate(self, runner, tmp_path):
        summary = runner.invoke(cli, ["summarize", MINI, "--k", "2", "--output", "record"])
        record_file = tmp_path / "mini.jsonl"
        record_file.write_text(summary.stdout, encoding="utf-8")
        model = tmp_path / "model.txt"
        model.write_text("Green tea has many health benefits.\n", encoding="utf-8")
        result = runner.invoke(
            cli, ["evaluate", str(record_file), "--candidate-kind", "record", "--model", str(model)]
        )
        assert result.stdout.splitlines()[0] == "P 50.0% R 100.0%"


def test_compare(runner):
    model = str(FIXTURES / "model_seven.txt")
    six = str(FIXTURES / "candidate_six_of_seven.txt")
    disjoint = str(FIXTURES / "candidate_disjoint.txt")
    result = runner.invoke(cli, ["compare", "--model", model, six, disjoint, "--output", "record"])
    assert result.exit_code == 0
    rows = [orjson.loads(line) for line in result.stdout.splitlines()]
    assert [row["candidate"] for row in rows] == [six, disjoint]
    assert [(row["precision_pct"], row["recall_pct"]) for row in rows] == [("85.7", "85.7"), ("0.0", "0.0")]


def test_compare_online_tool_summaries_against_manual_summary(runner):
    model = str(FIXTURES / "oop_model_summary.txt")
    tools = [str(FIXTURES / f"tool_{name}.txt") for name in ("freesummarizer", "smmry", "textcompactor", "tools4noobs")]
    result = runner.invoke(cli, ["compare", "--model", model, *tools, "--output", "record"])
    assert result.exit_code == 0
    rows = [orjson.loads(line) for line in result.stdout.splitlines()]
    assert [(row["n_common"], row["n_sum"], row["n_msum"]) for row in rows] == [
        (2, 5, 5),
        (3, 6, 5),
        (2, 7, 5),
        (2, 9, 5),
    ]
    assert [(row["precision_pct"], row["recall_pct"]) for row in rows] == [
        ("40.0", "40.0"),
        ("50.0", "60.0"),
        ("28.6", "40.0"),
        ("22.2", "40.0"),
    ]


def test_compare_table(runner):
    model = str(FIXTURES / "model_seven.txt")
    result = runner.invoke(cli, ["compare", "--model", model, model])
    assert result.exit_code == 0
    header, row = result.stdout.splitlines()
    assert header.split() == ["candidate", "common", "sum", "msum", "P%", "R%"]
    assert row.split()[-2:] == ["100.0", "100.0"]


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "TitleSum" in result.stdout
