"""Exit codes and golden output for the command-line front end."""

import io
import json

import pytest

from packetlift import corpus
from packetlift.cli import main
from packetlift.fileformat import parse_parameter_file, serialize_parameter_file

from conftest import FIXTURES, GOLDEN


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_corpus_passes_in_text_format(capsys, corpus_path):
    code, out, err = run(capsys, "analyze", str(corpus_path))
    assert code == 0
    assert err == ""
    assert out == (GOLDEN / "corpus.text").read_text()


def test_corpus_passes_in_machine_format(capsys, corpus_path):
    code, out, _ = run(capsys, "analyze", str(corpus_path),
                       "--format", "machine")
    assert code == 0
    assert out == (GOLDEN / "corpus.machine").read_text()


def test_output_is_deterministic(capsys, corpus_path):
    _, first, _ = run(capsys, "analyze", str(corpus_path), "--format", "machine")
    _, second, _ = run(capsys, "analyze", str(corpus_path), "--format", "machine")
    assert first == second


def test_machine_output_is_sorted_json(capsys, corpus_path):
    _, out, _ = run(capsys, "analyze", str(corpus_path), "--format", "machine")
    doc = json.loads(out)
    assert list(doc) == sorted(doc)
    assert doc["version"] == 1
    assert [p["name"] for p in doc["parameters"]] == \
        [c.name for c in corpus.classical_cases()]


def test_empty_file_is_ok(capsys):
    code, out, _ = run(capsys, "analyze", str(FIXTURES / "empty.json"),
                       "--format", "machine")
    assert code == 0
    assert out == '{"parameters":[],"version":1}\n'


def test_malformed_file_exits_one(capsys):
    code, _, err = run(capsys, "analyze", str(FIXTURES / "malformed.json"))
    assert code == 1
    assert err.startswith("error:")


def test_missing_file_exits_one(capsys):
    code, _, err = run(capsys, "analyze", "no/such/file.json")
    assert code == 1
    assert "cannot read" in err


def test_failed_check_exits_two(capsys):
    code, out, err = run(capsys, "analyze", str(FIXTURES / "declared_bad.json"))
    assert code == 2
    assert "check failed:" in err
    assert "[FAIL]" in out


def test_bad_flag_exits_one(capsys):
    code, _, err = run(capsys, "analyze", "x.json", "--format", "yaml")
    assert code == 1
    assert "error:" in err


def test_missing_subcommand_exits_one(capsys):
    code, _, err = run(capsys)
    assert code == 1
    assert "error:" in err


def test_seed_is_rejected(capsys, corpus_path):
    code, _, err = run(capsys, "analyze", str(corpus_path), "--seed", "7")
    assert code == 1
    assert "deterministic" in err


def test_mode_flags_conflict(capsys, corpus_path):
    code, _, err = run(capsys, "analyze", str(corpus_path),
                       "--archimedean", "--nonarchimedean")
    assert code == 1
    assert "not allowed with" in err


def test_archimedean_mode_reports_bounds(capsys, corpus_path):
    code, out, _ = run(capsys, "analyze", str(corpus_path), "--archimedean")
    assert code == 0
    assert "counts <=" in out
    assert "upper bounds" in out


def test_oracle_flag_demands_realizations(capsys, corpus_path):
    # sp4-113 and so4-twisted ship without realization matrices
    code, _, err = run(capsys, "analyze", str(corpus_path), "--oracle")
    assert code == 2
    assert "no realization" in err


def test_stdin_input(capsys, monkeypatch, corpus_path):
    monkeypatch.setattr("sys.stdin", io.StringIO(corpus_path.read_text()))
    code, out, _ = run(capsys, "analyze", "-", "--format", "machine")
    assert code == 0
    assert out == (GOLDEN / "corpus.machine").read_text()


def test_fixture_matches_the_bundled_corpus(corpus_path):
    # regeneration guard: the checked-in fixture is the serializer's output
    # for the in-code corpus, byte for byte
    text = corpus_path.read_text()
    assert serialize_parameter_file(corpus.corpus_parameter_file()) == text
    assert serialize_parameter_file(parse_parameter_file(text)) == text
