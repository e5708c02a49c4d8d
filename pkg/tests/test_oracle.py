"""The matrix-group route to component groups, cross-checked against the
combinatorial recipe."""

from fractions import Fraction

import pytest

from packetlift import corpus
from packetlift.oracle import (OracleMismatch, OracleUnsupported,
                               commutant_oracle, compare_with_component_data,
                               oracle_comparison)
from packetlift.params import (KIND_SP, SD_ORTH, ClassicalParameter,
                               SummandSpec, component_group)


def _realized_cases():
    return [c for c in corpus.classical_cases() if c.blocks is not None]


def test_comparison_passes_on_two_small_cases(classical_by_name):
    for name in ("sp-k3", "so4-pair"):
        case = classical_by_name[name]
        comp = oracle_comparison(case.generators(), case.parameter)
        assert comp.all_passed, (name, comp.failures())


def test_oracle_group_orders(classical_by_name):
    expected = {
        "sp-k1": 1, "sp-k2": 16, "sp-k3": 4, "sp-k4": 32, "sp-k5": 8,
        "so4-pair": 16, "so6": 32, "so6-theta": 32, "so8": 64,
    }
    for name, order in expected.items():
        case = classical_by_name[name]
        out = commutant_oracle(case.generators(), case.parameter)
        assert out.group_order == order, name


def test_sign_pattern_subgroup_sizes(classical_by_name):
    # det-one sign patterns form a subgroup of order 2^(k-1) in the
    # discrete symplectic cases
    for k, name in [(1, "sp-k1"), (2, "sp-k2"), (3, "sp-k3"),
                    (4, "sp-k4"), (5, "sp-k5")]:
        case = classical_by_name[name]
        out = commutant_oracle(case.generators(), case.parameter)
        assert len(out.a_vectors) == 2 ** (k - 1), name
        assert out.s_bar_order == 2 ** (k - 1), name


def test_non_orthogonal_generator_rejected():
    p = ClassicalParameter(KIND_SP, 1, (
        SummandSpec("a", 1, SD_ORTH), SummandSpec("b", 2, SD_ORTH)), True)
    gens = [((2, 0, 0), (0, 1, 0), (0, 0, 1))]
    with pytest.raises((OracleUnsupported, ValueError)):
        commutant_oracle(gens, p)


def test_dimension_mismatch_rejected(classical_by_name):
    case = classical_by_name["sp-k3"]
    p = ClassicalParameter(KIND_SP, 2, (
        SummandSpec("a", 1, SD_ORTH), SummandSpec("b", 1, SD_ORTH),
        SummandSpec("c", 3, SD_ORTH)), True)
    with pytest.raises(OracleMismatch):
        commutant_oracle(case.generators(), p)


def test_wrong_block_shape_is_a_mismatch(classical_by_name):
    # generators realize blocks of dims (1, 2); the parameter claims (1, 1, 1)
    case = classical_by_name["sp-k2"]
    p = ClassicalParameter(KIND_SP, 1, (
        SummandSpec("a", 1, SD_ORTH), SummandSpec("b", 1, SD_ORTH),
        SummandSpec("c", 1, SD_ORTH)), True)
    with pytest.raises((OracleMismatch, OracleUnsupported)):
        commutant_oracle(case.generators(), p)


def test_irrational_splitting_rejected():
    # a 3-cycle acts with eigenvalues 1, w, w~; the plane does not split
    # over the rationals
    p = ClassicalParameter(KIND_SP, 1, (
        SummandSpec("a", 1, SD_ORTH), SummandSpec("b", 2, SD_ORTH)), True)
    c3 = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    with pytest.raises(OracleUnsupported):
        commutant_oracle([c3], p)


def test_rational_entries_are_accepted():
    # a reflection written with fractional entries, still orthogonal;
    # it splits into the two eigenlines for +1 and -1
    h = Fraction(3, 5)
    w = Fraction(4, 5)
    mat = ((h, w), (w, -h))
    p = ClassicalParameter("SO(2n)_split", 1, (
        SummandSpec("a", 1, SD_ORTH), SummandSpec("b", 1, SD_ORTH)), False)
    out = commutant_oracle([mat], p)
    assert out.group_order == 2


def test_comparison_detects_foreign_data(classical_by_name):
    case = classical_by_name["so4-pair"]
    out = commutant_oracle(case.generators(), case.parameter)
    wrong = component_group(classical_by_name["so6"].parameter)
    comp = compare_with_component_data(out, wrong)
    assert not comp.all_passed


def test_every_bundled_realization_agrees():
    for case in _realized_cases():
        comp = oracle_comparison(case.generators(), case.parameter)
        assert comp.all_passed, (case.name, comp.failures())
