"""Restriction/induction through normal subgroups with abelian quotient."""

import pytest

from packetlift import corpus, groups
from packetlift.chartable import character_table, restrict
from packetlift.clifford import (CliffordError, build_context,
                                 quotient_linear_characters,
                                 verify_clifford_suite)

CHECK_NAMES = {
    "restriction-single-orbit-support",
    "every-orbit-arises",
    "lift-unique-up-to-twist",
    "multiplicity-equals-twist-count",
    "multiplicity-squared-identity",
    "induction-shape-identity",
}


def test_nonabelian_quotient_is_refused():
    s4, v4 = groups.klein_four_in_s4()
    with pytest.raises(CliffordError):
        build_context(s4, v4)


def test_non_normal_subgroup_is_refused():
    s3 = groups.symmetric(3)
    sub = s3.closure([s3.index[(1, 0, 2)]])  # order 2, not normal
    with pytest.raises((CliffordError, ValueError)):
        build_context(s3, sub)


def test_quotient_linear_character_count():
    for case in corpus.restriction_cases():
        if case.expect_reject:
            continue
        ctx = build_context(case.group, case.sub_indices)
        chars = quotient_linear_characters(ctx)
        assert len(chars) == case.group.order // len(case.sub_indices)
        # each is a genuine linear character of G
        for _, lam in chars:
            assert lam.degree.to_int() == 1


def test_suite_passes_on_corpus():
    for case in corpus.restriction_cases():
        if case.expect_reject:
            continue
        report = verify_clifford_suite(build_context(case.group,
                                                     case.sub_indices))
        assert report.all_passed, (case.name, report.failures())
        assert {name for name, _, _ in report.checks} == CHECK_NAMES


def test_multiplicity_two_and_four_show_up():
    by_name = {c.name: c for c in corpus.restriction_cases()}
    mult = {}
    for name in ("D4 over center", "Q8 over center", "ES32+ over center"):
        case = by_name[name]
        report = verify_clifford_suite(build_context(case.group,
                                                     case.sub_indices))
        mult[name] = sorted({o.multiplicity for o in report.orbits})
    assert mult["D4 over center"] == [1, 2]
    assert mult["Q8 over center"] == [1, 2]
    assert mult["ES32+ over center"] == [1, 4]


def test_squared_multiplicity_identity_by_hand():
    # the two-dimensional character of D4 restricted to the center
    d4 = groups.dihedral(4)
    ctx = build_context(d4, d4.center())
    table = character_table(d4)
    two_dim = [row for row in table.rows if row.degree.to_int() == 2][0]
    res = restrict(two_dim, ctx.sub, ctx.embed)
    m = character_table(ctx.sub).decompose(res)
    assert sorted(m) == [0, 2]  # one central character, multiplicity two
    # X(pi) for the 2-dim: every quotient character twists it to itself
    x_count = sum(1 for _, lam in quotient_linear_characters(ctx)
                  if (two_dim * lam).values == two_dim.values)
    assert x_count == 4
    # m^2 * |orbit index| = |X(pi)|: orbit of a central character is itself
    assert 2 * 2 * 1 == x_count


def test_orbit_partition_covers_irr_h():
    for name in ("A4 over V4", "D6 over C6"):
        case = {c.name: c for c in corpus.restriction_cases()}[name]
        ctx = build_context(case.group, case.sub_indices)
        report = verify_clifford_suite(ctx)
        rows = sorted(r for o in report.orbits for r in o.orbit.orbit_rows)
        assert rows == list(range(len(ctx.table_h.rows)))


def test_orbit_stabilizer_arithmetic():
    case = {c.name: c for c in corpus.restriction_cases()}["D6 over C6"]
    ctx = build_context(case.group, case.sub_indices)
    report = verify_clifford_suite(ctx)
    for orb in report.orbits:
        stab = len(orb.orbit.stabilizer_indices)
        assert case.group.order % stab == 0
        assert len(orb.orbit.orbit_rows) == case.group.order // stab
        # the stabilizer contains the subgroup itself
        assert set(case.sub_indices) <= set(orb.orbit.stabilizer_indices)
