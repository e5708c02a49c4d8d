"""Kernel of the twist map, coarse packets, pairings, refinement."""

import dataclasses

import pytest

from packetlift import corpus, groups
from packetlift.abelian import AbHom, FinAbGroup, dual_group
from packetlift.lifting import (LiftingError, TwistGroup,
                                alpha_from_twist_chars, build_coarse_packet,
                                build_lifting, coarse_structure,
                                construct_pairing, exhaustive_pairing_search,
                                multiplicity_bridge, refined_decomposition)
from packetlift.params import (KIND_SO_SPLIT, SD_ORTH, ClassicalParameter,
                               SummandSpec, component_group)

V22 = FinAbGroup((2, 2))


def _pipeline(case):
    data = component_group(case.parameter)
    x = TwistGroup(FinAbGroup(corpus.TWIST_FACTORS))
    alpha = alpha_from_twist_chars(data, x)
    return build_lifting(data, alpha, x, theta_element=case.theta_element,
                         theta_twist=case.theta_twist)


def test_twist_group_designated_subgroup():
    x = TwistGroup(V22, ((1, 0),))
    assert x.x_order == 2
    assert x.contains((1, 0)) and not x.contains((0, 1))
    assert TwistGroup(V22).x_order == 4


def test_zero_twist_map_keeps_the_full_group():
    alpha = AbHom.zero(V22, V22)
    datum = build_lifting(V22, alpha, TwistGroup(V22))
    assert datum.s_tilde.order == 4
    c = coarse_structure(datum)
    assert (c.orbit_size, c.orbit_count, c.coarse_total) == (1, 4, 16)
    assert c.quotient_order == 4 and c.image_order_in_x == 1


def test_equal_nonzero_twists_cut_the_diagonal():
    # both generators map to the same nonzero character
    alpha = AbHom(V22, V22, ((1, 1), (0, 0)))
    datum = build_lifting(V22, alpha, TwistGroup(V22))
    assert datum.s_tilde_elements == {(0, 0), (1, 1)}
    c = coarse_structure(datum)
    assert (c.orbit_size, c.orbit_count, c.coarse_total) == (2, 2, 4)


def test_injective_twist_map_kills_the_kernel():
    datum = build_lifting(V22, AbHom.identity(V22), TwistGroup(V22))
    assert datum.s_tilde.is_trivial
    c = coarse_structure(datum)
    assert (c.orbit_size, c.orbit_count, c.coarse_total) == (4, 1, 1)


def test_escaping_image_is_rejected():
    x = TwistGroup(V22, ((1, 0),))
    with pytest.raises(LiftingError, match="escapes the designated twist"):
        build_lifting(V22, AbHom.identity(V22), x)


def test_domain_mismatch_is_rejected():
    alpha = AbHom.zero(FinAbGroup((2,)), V22)
    with pytest.raises(LiftingError, match="alpha domain"):
        build_lifting(V22, alpha, TwistGroup(V22))


def test_theta_twist_requires_a_nonempty_coset(classical_by_name):
    case = classical_by_name["sp-k2"]
    data = component_group(case.parameter)
    x = TwistGroup(FinAbGroup(corpus.TWIST_FACTORS))
    alpha = alpha_from_twist_chars(data, x)
    with pytest.raises(LiftingError, match="theta coset is empty"):
        build_lifting(data, alpha, x, theta_twist=(1, 0))


def test_twist_characters_must_vanish_on_the_center():
    p = ClassicalParameter(KIND_SO_SPLIT, 2, (
        SummandSpec("a", 2, SD_ORTH, twist_char=(1, 0)),
        SummandSpec("b", 2, SD_ORTH, twist_char=(0, 0))), False)
    data = component_group(p)
    with pytest.raises(LiftingError, match="do not vanish"):
        alpha_from_twist_chars(data, TwistGroup(V22))


def test_missing_twist_character_is_reported():
    p = ClassicalParameter(KIND_SO_SPLIT, 2, (
        SummandSpec("a", 2, SD_ORTH),
        SummandSpec("b", 2, SD_ORTH)), False)
    data = component_group(p)
    with pytest.raises(LiftingError, match="lacks a twist character"):
        alpha_from_twist_chars(data, TwistGroup(V22))


# (orbit_size, orbit_count, coarse_total) per corpus case, frozen from the
# sign-pattern enumeration that the realization oracle confirms
EXPECTED_COUNTS = {
    "sp-k1": (1, 1, 4),
    "sp-k2": (2, 1, 2),
    "sp-k3": (2, 2, 4),
    "sp-k4": (4, 2, 2),
    "sp-k5": (4, 4, 4),
    "so4-pair": (1, 2, 8),
    "so4-twisted": (2, 1, 2),
    "so6": (2, 2, 4),
    "so6-theta": (2, 2, 2),
    "so8": (4, 2, 2),
}


def test_corpus_counts(classical_by_name):
    for name, expected in EXPECTED_COUNTS.items():
        datum = _pipeline(classical_by_name[name])
        c = coarse_structure(datum)
        assert (c.orbit_size, c.orbit_count, c.coarse_total) == expected, name
        assert c.orbit_size * c.orbit_count == datum.s_bar.order
        assert c.coarse_total == c.orbit_count * c.quotient_order
        assert c.comparison == "="


def test_archimedean_mode_only_relaxes_the_comparison(classical_by_name):
    datum = _pipeline(classical_by_name["so6"])
    exact = coarse_structure(datum)
    bound = coarse_structure(datum, nonarchimedean=False)
    assert bound.mode == "archimedean" and bound.comparison == "<="
    assert (bound.orbit_size, bound.orbit_count, bound.coarse_total) == \
        (exact.orbit_size, exact.orbit_count, exact.coarse_total)


def test_packet_shape(classical_by_name):
    for name in ("sp-k3", "so4-pair", "so8"):
        datum = _pipeline(classical_by_name[name])
        c = coarse_structure(datum)
        packet = build_coarse_packet(datum)
        assert len(packet.labels) == c.orbit_count * c.quotient_order
        assert packet.generic_label in packet.labels
        assert all(m == 1 for m in packet.label_multiplicity.values())
        for members in packet.base_fibers.values():
            assert len(members) == c.orbit_size


def test_pairing_pins_the_generic_to_the_trivial_character(classical_by_name):
    for name in EXPECTED_COUNTS:
        datum = _pipeline(classical_by_name[name])
        packet = build_coarse_packet(datum)
        outcome = construct_pairing(datum, packet)
        assert outcome.succeeded, name
        values = outcome.assignment.as_dict()
        assert values[packet.generic_label] == dual_group(datum.s_tilde).zero
        assert not outcome.assignment.free_choices


def test_fully_pinned_packet_has_a_unique_assignment(classical_by_name):
    for name in ("sp-k3", "so4-pair", "so6", "so6-theta"):
        datum = _pipeline(classical_by_name[name])
        packet = build_coarse_packet(datum)
        assert exhaustive_pairing_search(datum, packet) == 1, name


def test_undeclared_fibers_leave_free_components(classical_by_name):
    datum = _pipeline(classical_by_name["so4-pair"])
    packet = build_coarse_packet(datum, declare_fibers=False)
    outcome = construct_pairing(datum, packet)
    assert outcome.succeeded
    assert len(outcome.assignment.free_choices) == 1
    # one free component, each value of the dual consistent on it
    assert exhaustive_pairing_search(datum, packet) == 2


def test_label_order_does_not_change_the_assignment(classical_by_name):
    datum = _pipeline(classical_by_name["so6"])
    packet = build_coarse_packet(datum)
    base = construct_pairing(datum, packet).assignment.as_dict()
    shuffled = dataclasses.replace(
        packet, labels=tuple(reversed(packet.labels)))
    again = construct_pairing(datum, shuffled).assignment.as_dict()
    assert again == base


def test_obstructed_packet_returns_a_closed_walk():
    datum, packet = corpus.obstruction_fixture()
    assert len(packet.labels) <= 16
    outcome = construct_pairing(datum, packet)
    assert not outcome.succeeded
    ob = outcome.obstruction
    assert ob.walk[0] == ob.walk[-1]
    assert any(ob.total_twist)
    # brute force agrees that no assignment exists
    assert exhaustive_pairing_search(datum, packet) == 0


def test_refined_partition(classical_by_name):
    for name in ("so4-pair", "so8"):
        datum = _pipeline(classical_by_name[name])
        c = coarse_structure(datum)
        packet = build_coarse_packet(datum)
        outcome = construct_pairing(datum, packet)
        refined = refined_decomposition(datum, packet, outcome)
        assert len(refined.parts) == c.quotient_order
        assert len({len(p) for p in refined.parts}) == 1
        assert refined.subset in refined.parts
        covered = sorted(lab for part in refined.parts for lab in part)
        assert covered == sorted(packet.labels)


def test_generic_choice_only_moves_the_anchored_part(classical_by_name):
    datum = _pipeline(classical_by_name["so4-pair"])
    packet = build_coarse_packet(datum)
    first = refined_decomposition(datum, packet,
                                  construct_pairing(datum, packet))
    zero = dual_group(datum.s_tilde).zero
    other = next(lab for lab in packet.labels
                 if packet.fiber_of[lab] == zero
                 and packet.coset_of[lab] != packet.coset_of[packet.generic_label])
    moved = dataclasses.replace(packet, generic_label=other)
    second = refined_decomposition(datum, moved,
                                   construct_pairing(datum, moved))
    assert second.parts == first.parts
    assert second.subset != first.subset
    assert second.subset in first.parts


def test_refinement_requires_a_successful_pairing():
    datum, packet = corpus.obstruction_fixture()
    outcome = construct_pairing(datum, packet)
    with pytest.raises(LiftingError, match="successful pairing"):
        refined_decomposition(datum, packet, outcome)


def test_bridge_on_an_abelian_group_is_multiplicity_free():
    c4 = groups.cyclic(4)
    sub = c4.closure([c4.index[2]])
    table = multiplicity_bridge(c4, sub)
    assert table.all_passed
    assert all(row.multiplicity == 1 for row in table.rows)


def test_bridge_flags_a_wrong_declared_multiplicity():
    block = next(b for b in corpus.synthetic_blocks() if "D4" in b.name)
    g = corpus.rebuild_group(block)
    table = multiplicity_bridge(g, block.s_tilde, declared={0: 1, 1: 2})
    assert not table.all_passed
    assert any("declared-multiplicity" in f for f in table.failures())


def test_bridge_rejects_a_foreign_twist_domain():
    block = next(b for b in corpus.synthetic_blocks() if "D4" in b.name)
    g = corpus.rebuild_group(block)
    bad = AbHom.zero(FinAbGroup((3,)), FinAbGroup((2,)))
    with pytest.raises(LiftingError, match="alpha domain"):
        multiplicity_bridge(g, block.s_tilde, alpha_q=bad)
