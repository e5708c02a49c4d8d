"""Bundled verification corpus.

Three kinds of fixtures live here: restriction pairs for the Clifford
checks, orthogonal matrix-group realizations of classical parameters for
the commutant oracle, and synthetic multiplication-table inputs for the
multiplicity bridge.  Everything is exact integer data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import groups
from .abelian import AbHom, FinAbGroup
from .fileformat import ParameterFile, ParameterRecord, SyntheticBlock
from .lifting import CoarsePacket, LiftingDatum, TwistGroup, build_lifting
from .params import (KIND_SO_QUASI, KIND_SO_SPLIT, KIND_SP, SD_ORTH,
                     ClassicalParameter, SummandSpec)

TWIST_FACTORS = (2, 2)


# ---------------------------------------------------------------------------
# restriction pairs


@dataclass(frozen=True)
class RestrictionCase:
    name: str
    group: groups.FinGroup
    sub_indices: tuple
    expect_reject: bool = False   # nonabelian quotient must be refused


def restriction_cases() -> tuple[RestrictionCase, ...]:
    s3 = groups.symmetric(3)
    d4 = groups.dihedral(4)
    q8 = groups.quaternion8()
    s4, v4 = groups.klein_four_in_s4()
    a4 = groups.alternating(4)
    z4 = groups.cyclic(4)
    es = groups.extraspecial_32_plus()
    d6 = groups.dihedral(6)

    cases = [
        RestrictionCase("S3 over A3", s3, s3.commutator_subgroup()),
        RestrictionCase("D4 over center", d4, d4.center()),
        RestrictionCase("Q8 over center", q8, q8.center()),
        RestrictionCase("S4 over V4", s4, v4, expect_reject=True),
        RestrictionCase("A4 over V4", a4, a4.commutator_subgroup()),
        RestrictionCase("C4 over C2", z4, z4.closure([z4.index[2]])),
        RestrictionCase("ES32+ over center", es, es.center()),
    ]
    # all three index-two subgroups of D6; the rotation subgroup is the
    # abelian one, the two reflection-bearing copies of D3 come after
    subs = sorted(d6.index_two_subgroups())
    cyc = [s for s in subs if _all_commute(d6, s)]
    rest = [s for s in subs if not _all_commute(d6, s)]
    if len(cyc) != 1 or len(rest) != 2:
        raise AssertionError("unexpected index-two lattice in D6")
    cases.append(RestrictionCase("D6 over C6", d6, cyc[0]))
    cases.append(RestrictionCase("D6 over D3-a", d6, rest[0]))
    cases.append(RestrictionCase("D6 over D3-b", d6, rest[1]))
    return tuple(cases)


def _all_commute(g: groups.FinGroup, indices) -> bool:
    return all(g.table[a][b] == g.table[b][a] for a in indices for b in indices)


# ---------------------------------------------------------------------------
# matrix realizations of classical parameters


_ROT2 = ((0, -1), (1, 0))
_REF2 = ((1, 0), (0, -1))


def block_generators(blocks, aux_rank: int):
    """Orthogonal generators realizing one irreducible summand per block.

    Each block is ("sign", bits) for a one-dimensional summand or
    ("rot2", bits) for a two-dimensional one.  bits[t] tells whether the
    t-th diagonal sign generator acts by -1 on that block.  A single
    global rotation and a single global reflection act on every rot2
    block at once, so distinct bit columns keep the blocks pairwise
    inequivalent while the closure stays small.
    """
    size = sum(1 if kind == "sign" else 2 for kind, _ in blocks)
    gens = []
    for t in range(aux_rank):
        entries = []
        for kind, bits in blocks:
            s = -1 if bits[t] else 1
            entries.extend([s] if kind == "sign" else [s, s])
        gens.append(tuple(tuple(entries[i] if i == j else 0 for j in range(size))
                          for i in range(size)))
    if any(kind == "rot2" for kind, _ in blocks):
        for mat2 in (_ROT2, _REF2):
            rows = [[0] * size for _ in range(size)]
            pos = 0
            for kind, _ in blocks:
                if kind == "sign":
                    rows[pos][pos] = 1
                    pos += 1
                else:
                    for i in range(2):
                        for j in range(2):
                            rows[pos + i][pos + j] = mat2[i][j]
                    pos += 2
            gens.append(tuple(tuple(r) for r in rows))
    if not gens:
        gens.append(tuple(tuple(int(i == j) for j in range(size))
                          for i in range(size)))
    return tuple(gens)


@dataclass(frozen=True)
class ClassicalCase:
    name: str
    parameter: ClassicalParameter
    blocks: tuple | None            # None: no bundled realization
    aux_rank: int = 0
    theta_element: str | None = None
    theta_twist: tuple | None = None

    def generators(self):
        if self.blocks is None:
            raise ValueError(f"case {self.name!r} has no realization")
        return block_generators(self.blocks, self.aux_rank)


def _orth(ident, dim, twist):
    return SummandSpec(ident=ident, dim=dim, sd_type=SD_ORTH, twist_char=twist)


def classical_cases() -> tuple[ClassicalCase, ...]:
    return (
        ClassicalCase(
            "sp-k1",
            ClassicalParameter(KIND_SP, 0, (_orth("a", 1, (0, 0)),), True),
            (("sign", ()),), 0),
        ClassicalCase(
            "sp-k2",
            ClassicalParameter(KIND_SP, 1, (
                _orth("a", 1, (1, 0)), _orth("b", 2, (0, 1))), True),
            (("sign", (1,)), ("rot2", (0,))), 1),
        ClassicalCase(
            "sp-k3",
            ClassicalParameter(KIND_SP, 1, (
                _orth("a", 1, (1, 0)), _orth("b", 1, (0, 1)),
                _orth("c", 1, (0, 1))), True),
            (("sign", (0, 1)), ("sign", (1, 0)), ("sign", (1, 1))), 2),
        ClassicalCase(
            "sp-k4",
            ClassicalParameter(KIND_SP, 2, (
                _orth("a", 1, (1, 0)), _orth("b", 1, (0, 1)),
                _orth("c", 1, (1, 1)), _orth("d", 2, (0, 0))), True),
            (("sign", (0, 1)), ("sign", (1, 0)), ("sign", (1, 1)),
             ("rot2", (0, 0))), 2),
        ClassicalCase(
            "sp-k5",
            ClassicalParameter(KIND_SP, 2, (
                _orth("a", 1, (1, 0)), _orth("b", 1, (0, 1)),
                _orth("c", 1, (1, 1)), _orth("d", 1, (0, 0)),
                _orth("e", 1, (1, 0))), True),
            (("sign", (0, 0, 1)), ("sign", (0, 1, 0)), ("sign", (1, 0, 0)),
             ("sign", (1, 1, 0)), ("sign", (1, 0, 1))), 3),
        ClassicalCase(
            "sp4-113",
            ClassicalParameter(KIND_SP, 2, (
                _orth("a", 1, (1, 0)), _orth("b", 1, (0, 1)),
                _orth("c", 3, (1, 1))), True),
            None),
        ClassicalCase(
            "so4-pair",
            ClassicalParameter(KIND_SO_SPLIT, 2, (
                _orth("a", 2, (0, 0)), _orth("b", 2, (0, 0))), True),
            (("rot2", (0,)), ("rot2", (1,))), 1),
        ClassicalCase(
            "so4-twisted",
            ClassicalParameter(KIND_SO_SPLIT, 2, (
                _orth("a", 2, (1, 0)), _orth("b", 2, (1, 0))), True),
            None),
        ClassicalCase(
            "so6",
            ClassicalParameter(KIND_SO_SPLIT, 3, (
                _orth("a", 2, (1, 0)), _orth("b", 2, (1, 0)),
                _orth("c", 2, (0, 0))), True),
            (("rot2", (0, 0)), ("rot2", (0, 1)), ("rot2", (1, 0))), 2),
        ClassicalCase(
            "so6-theta",
            ClassicalParameter(KIND_SO_QUASI, 3, (
                _orth("a", 1, (1, 0)), _orth("b", 1, (1, 0)),
                _orth("c", 2, (0, 1)), _orth("d", 2, (0, 1))), True),
            (("sign", (0, 1)), ("sign", (1, 0)), ("rot2", (0, 0)),
             ("rot2", (1, 1))), 2,
            theta_element="a", theta_twist=(1, 0)),
        ClassicalCase(
            "so8",
            ClassicalParameter(KIND_SO_SPLIT, 4, (
                _orth("a", 2, (1, 0)), _orth("b", 2, (0, 1)),
                _orth("c", 2, (1, 1)), _orth("d", 2, (0, 0))), True),
            (("rot2", (0, 0, 0)), ("rot2", (0, 0, 1)), ("rot2", (0, 1, 0)),
             ("rot2", (1, 0, 0))), 3),
    )


def discrete_symplectic_cases() -> tuple[ClassicalCase, ...]:
    """The Sp members, in carrier-count order 1..5."""
    return tuple(c for c in classical_cases() if c.name.startswith("sp-"))


# ---------------------------------------------------------------------------
# synthetic bridge inputs


def _group_block(name, g: groups.FinGroup, sub_indices, alpha_target,
                 alpha_matrix, declared) -> SyntheticBlock:
    return SyntheticBlock(
        name=name,
        labels=tuple(str(lab) for lab in g.labels),
        table=tuple(tuple(row) for row in g.table),
        s_tilde=tuple(sorted(sub_indices)),
        alpha_target=tuple(alpha_target),
        alpha_matrix=tuple(tuple(r) for r in alpha_matrix),
        declared=tuple(tuple(p) for p in declared))


def synthetic_blocks() -> tuple[SyntheticBlock, ...]:
    d4 = groups.dihedral(4)
    q8 = groups.quaternion8()
    s3 = groups.symmetric(3)
    # declared pairs are (orbit representative row in Irr(S_tilde), m);
    # the two-dimensional representation sits over the faithful central
    # character of D4 and Q8 (table row 0) with m = 2, everything else is
    # m = 1.  alpha must be injective on the quotient or the duality count
    # on the multiplicity-one incidences comes out short.
    return (
        _group_block("D4 over center", d4, d4.center(),
                     (2, 2), ((1, 0), (0, 1)), ((0, 2), (1, 1))),
        _group_block("Q8 over center", q8, q8.center(),
                     (2, 2), ((1, 0), (0, 1)), ((0, 2), (1, 1))),
        _group_block("S3 over A3", s3, s3.commutator_subgroup(),
                     (2,), ((1,),), ((0, 1), (1, 1))),
    )


def rebuild_group(block: SyntheticBlock) -> groups.FinGroup:
    """Validated group from a block's multiplication table, same indexing."""
    n = len(block.labels)
    return groups.FinGroup(list(range(n)),
                           [list(row) for row in block.table],
                           name=block.name)


# ---------------------------------------------------------------------------
# an inconsistent packet, for the obstruction path


def obstruction_fixture() -> tuple[LiftingDatum, CoarsePacket]:
    """Two labels whose theta edge demands a character shift that the
    declared fibers forbid.  No valid assignment exists."""
    s_bar = FinAbGroup((2, 2))
    x = TwistGroup(FinAbGroup((2,)))
    alpha = AbHom(s_bar, x.ambient, ((0, 1),))
    datum = build_lifting(s_bar, alpha, x)
    zero = (0,)
    packet = CoarsePacket(
        labels=("L0", "L1"),
        twist_action={(v, lab): lab
                      for v in sorted(x.x_elements) for lab in ("L0", "L1")},
        theta_edges=(("L0", "L1", (1,)),),
        generic_label="L0",
        fiber_of={"L0": zero, "L1": zero},
        coset_of={"L0": zero, "L1": zero},
        label_multiplicity={"L0": 1, "L1": 1})
    return datum, packet


# ---------------------------------------------------------------------------
# the bundled parameter file


def _fraction_rows(mat):
    return tuple(tuple(Fraction(v) for v in row) for row in mat)


def corpus_parameter_file() -> ParameterFile:
    records = []
    oracles = []
    for case in classical_cases():
        records.append(ParameterRecord(
            name=case.name, parameter=case.parameter, generic_marked=True,
            theta_element=case.theta_element, theta_twist=case.theta_twist))
        if case.blocks is not None:
            oracles.append((case.name,
                            tuple(_fraction_rows(m) for m in case.generators())))
    return ParameterFile(version=1, twist_factors=TWIST_FACTORS,
                         designated=None, parameters=tuple(records),
                         oracles=tuple(oracles), synthetic=synthetic_blocks())
