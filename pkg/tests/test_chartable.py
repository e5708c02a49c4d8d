"""Character tables against textbook values, plus induction/restriction."""

from fractions import Fraction

from packetlift import groups
from packetlift.chartable import (character_table, induce, inner_product,
                                  restrict, trivial_character,
                                  verify_orthogonality)
from packetlift.clifford import build_context
from packetlift.cycl import CycNumber


def test_degrees():
    for g, degrees in [
        (groups.symmetric(3), (1, 1, 2)),
        (groups.dihedral(4), (1, 1, 1, 1, 2)),
        (groups.quaternion8(), (1, 1, 1, 1, 2)),
        (groups.symmetric(4), (1, 1, 2, 3, 3)),
        (groups.alternating(4), (1, 1, 1, 3)),
        (groups.dihedral(6), (1, 1, 1, 1, 2, 2)),
    ]:
        table = character_table(g)
        assert table.degrees == degrees, g.name
        assert sum(d * d for d in degrees) == g.order


def test_extraspecial_table():
    table = character_table(groups.extraspecial_32_plus())
    assert table.degrees == (1,) * 16 + (4,)


def test_orthogonality():
    for g in (groups.symmetric(4), groups.quaternion8(), groups.dihedral(6)):
        verify_orthogonality(character_table(g))


def test_row_inner_products():
    g = groups.symmetric(4)
    rows = character_table(g).rows
    one = CycNumber.from_rational(1)
    zero = CycNumber.from_rational(0)
    for i, a in enumerate(rows):
        for j, b in enumerate(rows):
            assert inner_product(a, b) == (one if i == j else zero)


def test_regular_character_decomposition():
    g = groups.symmetric(3)
    table = character_table(g)
    reg_values = []
    for cls in g.conjugacy_classes():
        reg_values.append(CycNumber.from_rational(g.order if cls[0] == g.identity
                                                  else 0))
    from packetlift.chartable import ClassFunction
    reg = ClassFunction(group=g, values=tuple(reg_values))
    assert table.decompose(reg) == (1, 1, 2)


def test_frobenius_reciprocity():
    s3 = groups.symmetric(3)
    ctx = build_context(s3, s3.commutator_subgroup())
    table_g = character_table(s3)
    table_h = character_table(ctx.sub)
    for chi in table_h.rows:
        ind = induce(chi, s3, ctx.sub, ctx.embed)
        for rho in table_g.rows:
            res = restrict(rho, ctx.sub, ctx.embed)
            assert inner_product(ind, rho) == inner_product(chi, res)


def test_induced_degree():
    d4 = groups.dihedral(4)
    ctx = build_context(d4, d4.center())
    chi = character_table(ctx.sub).rows[0]
    ind = induce(chi, d4, ctx.sub, ctx.embed)
    assert ind.degree.to_fraction() == Fraction(d4.order, ctx.sub.order)


def test_restriction_of_trivial():
    g = groups.alternating(4)
    ctx = build_context(g, g.commutator_subgroup())
    res = restrict(trivial_character(g), ctx.sub, ctx.embed)
    assert res == trivial_character(ctx.sub)
