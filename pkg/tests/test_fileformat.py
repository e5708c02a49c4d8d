"""Parsing, diagnostics, and the canonical serializer."""

import json

import pytest

from packetlift.fileformat import (FileFormatError, parse_parameter_file,
                                   serialize_parameter_file)
from packetlift.params import UnsupportedParameter

MINIMAL = '{"version": 1, "twist_group": [2, 2], "parameters": []}'


def _doc(**extra):
    doc = {"version": 1, "twist_group": [2, 2], "parameters": []}
    doc.update(extra)
    return json.dumps(doc)


def _param(**overrides):
    p = {
        "name": "p",
        "group_kind": "Sp(2n)",
        "n": 1,
        "summands": [
            {"id": "a", "dim": 1, "sd_type": "orthogonal", "twist_char": [1, 0]},
            {"id": "b", "dim": 2, "sd_type": "orthogonal", "twist_char": [0, 1]},
        ],
        "discrete": 1,
    }
    p.update(overrides)
    return p


def test_minimal_document():
    pf = parse_parameter_file(MINIMAL)
    assert pf.version == 1
    assert pf.twist_factors == (2, 2)
    assert pf.parameters == ()
    assert pf.designated is None
    assert pf.oracles == () and pf.synthetic == ()


def test_float_is_rejected_with_position():
    text = '{"version": 1,\n "twist_group": [2, 0.5],\n "parameters": []}'
    with pytest.raises(FileFormatError, match="floating-point") as exc:
        parse_parameter_file(text)
    assert exc.value.line == 2
    assert str(exc.value).startswith("line 2, column")


def test_booleans_and_null_are_rejected():
    with pytest.raises(FileFormatError, match="use integers 0/1"):
        parse_parameter_file(_doc(parameters=[_param(discrete=True)]))
    with pytest.raises(FileFormatError, match="not allowed"):
        parse_parameter_file(_doc(designated=None))


def test_json_syntax_errors_carry_positions():
    with pytest.raises(FileFormatError) as exc:
        parse_parameter_file('{"version": 1,,}')
    assert exc.value.line == 1 and exc.value.column is not None


def test_version_must_match():
    with pytest.raises(FileFormatError, match="unsupported version 2"):
        parse_parameter_file('{"version": 2, "twist_group": [2], "parameters": []}')


def test_missing_keys_are_named():
    with pytest.raises(FileFormatError, match="missing key 'twist_group'"):
        parse_parameter_file('{"version": 1, "parameters": []}')
    with pytest.raises(FileFormatError, match="missing key 'summands'"):
        bad = _param()
        del bad["summands"]
        parse_parameter_file(_doc(parameters=[bad]))


def test_unknown_keys_are_rejected():
    with pytest.raises(FileFormatError, match="unknown top-level keys"):
        parse_parameter_file(_doc(zzz=0))
    with pytest.raises(FileFormatError, match="unknown keys"):
        parse_parameter_file(_doc(parameters=[_param(color="red")]))


def test_twist_factors_must_be_at_least_two():
    with pytest.raises(FileFormatError, match=">= 2"):
        parse_parameter_file(_doc(twist_group=[2, 1]))


def test_twist_char_range_names_the_summand():
    bad = _param(summands=[
        {"id": "a", "dim": 1, "sd_type": "orthogonal", "twist_char": [2, 0]},
        {"id": "b", "dim": 2, "sd_type": "orthogonal", "twist_char": [0, 1]}])
    with pytest.raises(FileFormatError, match=r"summand 'a'.*out of range"):
        parse_parameter_file(_doc(parameters=[bad]))


def test_twist_char_rank_is_checked():
    bad = _param(summands=[
        {"id": "a", "dim": 1, "sd_type": "orthogonal", "twist_char": [1]},
        {"id": "b", "dim": 2, "sd_type": "orthogonal", "twist_char": [0, 1]}])
    with pytest.raises(FileFormatError, match="X has rank 2"):
        parse_parameter_file(_doc(parameters=[bad]))


def test_duplicate_parameter_names():
    with pytest.raises(FileFormatError, match="names must be unique"):
        parse_parameter_file(_doc(parameters=[_param(), _param()]))


def test_unknown_group_kind():
    with pytest.raises(FileFormatError, match="unknown group_kind"):
        parse_parameter_file(_doc(parameters=[_param(group_kind="GL(n)")]))


def test_theta_element_must_be_a_summand():
    with pytest.raises(FileFormatError, match="not a summand id"):
        parse_parameter_file(_doc(parameters=[_param(theta_element="z")]))


def test_contract_violations_become_format_errors():
    # dims sum to the wrong dual dimension
    with pytest.raises(FileFormatError, match="parameter 'p'"):
        parse_parameter_file(_doc(parameters=[_param(n=4)]))


def test_unsupported_multiplicity_keeps_its_type():
    bad = _param(n=1, summands=[
        {"id": "a", "dim": 1, "sd_type": "orthogonal", "multiplicity": 3}])
    with pytest.raises(UnsupportedParameter):
        parse_parameter_file(_doc(parameters=[bad]))


def test_oracle_must_reference_a_parameter():
    with pytest.raises(FileFormatError, match="unknown parameter 'q'"):
        parse_parameter_file(_doc(
            parameters=[_param()],
            oracles=[{"parameter": "q", "generators": [[[1]]]}]))


def test_oracle_matrices_must_be_square():
    with pytest.raises(FileFormatError, match="must be square"):
        parse_parameter_file(_doc(
            parameters=[_param()],
            oracles=[{"parameter": "p", "generators": [[[1, 0]]]}]))


def test_matrix_entries_are_integers_or_fractions():
    def with_entry(e):
        return _doc(parameters=[_param()],
                    oracles=[{"parameter": "p",
                              "generators": [[[e, 0, 0], [0, e, 0], [0, 0, 1]]]}])

    pf = parse_parameter_file(with_entry("3/5"))
    mat = pf.oracles[0][1][0]
    assert mat[0][0].denominator == 5
    with pytest.raises(FileFormatError, match="bad matrix entry"):
        parse_parameter_file(with_entry("3:5"))
    with pytest.raises(FileFormatError, match="zero denominator"):
        parse_parameter_file(with_entry("1/0"))


def test_synthetic_table_shape():
    block = {"name": "s", "labels": [0, 1], "table": [[0, 1]], "s_tilde": [0]}
    with pytest.raises(FileFormatError, match="table must be 2x2"):
        parse_parameter_file(_doc(synthetic=[block]))


def test_synthetic_subgroup_indices_in_range():
    block = {"name": "s", "labels": [0, 1], "table": [[0, 1], [1, 0]],
             "s_tilde": [0, 5]}
    with pytest.raises(FileFormatError, match="out of range"):
        parse_parameter_file(_doc(synthetic=[block]))


def test_declared_entries_are_pairs():
    block = {"name": "s", "labels": [0, 1], "table": [[0, 1], [1, 0]],
             "s_tilde": [0], "declared": [[0, 1, 2]]}
    with pytest.raises(FileFormatError, match=r"\[row, m\] pairs"):
        parse_parameter_file(_doc(synthetic=[block]))


def test_designated_generators_have_full_rank_vectors():
    with pytest.raises(FileFormatError, match="wrong rank"):
        parse_parameter_file(_doc(designated=[[1]]))
    pf = parse_parameter_file(_doc(designated=[[1, 0]]))
    assert pf.designated == ((1, 0),)


def test_round_trip_is_idempotent(corpus_path):
    text = corpus_path.read_text()
    pf = parse_parameter_file(text)
    out = serialize_parameter_file(pf)
    assert out == text
    assert parse_parameter_file(out) == pf


def test_serializer_emits_fraction_strings():
    text = _doc(parameters=[_param()],
                oracles=[{"parameter": "p",
                          "generators": [[["3/5", "4/5", 0],
                                          ["4/5", "-3/5", 0],
                                          [0, 0, 1]]]}])
    out = serialize_parameter_file(parse_parameter_file(text))
    assert '"3/5"' in out and '"-3/5"' in out
