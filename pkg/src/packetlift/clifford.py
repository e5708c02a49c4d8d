"""Restriction and induction across a normal subgroup with abelian quotient.

Given G and a normal subgroup H with G/H abelian, this module computes the
conjugation action on characters of H, orbits and stabilizers, a maximal
extension subgroup with an explicit extension, the twist set measuring the
failure of further extension, and the full restriction shape of every
irreducible of G.  verify_clifford_suite checks the five structural
identities exactly and reports witnesses.

Nonabelian quotients are rejected up front: the decomposition machinery
here leans on twisting by linear characters of G/H, which only separates
cosets when the quotient is abelian.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .abelian import AbCharacter, FinAbGroup
from .chartable import (CharacterTable, ClassFunction, character_table,
                        induce, inner_product, restrict)
from .cycl import CycNumber
from .groups import FinGroup


class CliffordError(ValueError):
    """Raised when the ambient pair (G, H) is outside the supported shape."""


@dataclass(frozen=True)
class CliffordContext:
    group: FinGroup
    sub_indices: tuple[int, ...]
    sub: FinGroup
    embed: tuple[int, ...]
    quot: FinGroup
    proj: tuple[int, ...]
    coset_reps: tuple[int, ...]          # Q index -> smallest G element index
    q_ab: FinAbGroup
    q_coords: tuple[tuple[int, ...], ...]
    table_g: CharacterTable
    table_h: CharacterTable

    @property
    def parent_to_sub(self) -> dict:
        return {p: i for i, p in enumerate(self.embed)}


def build_context(group: FinGroup, sub_indices) -> CliffordContext:
    sub_indices = tuple(sorted(set(sub_indices)))
    if not group.is_subgroup(sub_indices):
        raise CliffordError("given indices do not form a subgroup")
    if not group.is_normal(sub_indices):
        raise CliffordError("subgroup is not normal")
    sub, embed = group.subgroup(sub_indices)
    quot, proj = group.quotient(sub_indices)
    if not quot.is_abelian():
        raise CliffordError(
            f"quotient of order {quot.order} is nonabelian; "
            "only abelian quotients are supported")
    reps = [None] * quot.order
    for x in range(group.order):
        q = proj[x]
        if reps[q] is None or x < reps[q]:
            reps[q] = x
    q_ab, q_coords, _ = quot.to_ab_group()
    return CliffordContext(
        group=group, sub_indices=sub_indices, sub=sub, embed=embed,
        quot=quot, proj=proj, coset_reps=tuple(reps),
        q_ab=q_ab, q_coords=q_coords,
        table_g=character_table(group), table_h=character_table(sub))


# ---------------------------------------------------------------------------
# conjugation action


def conjugate_character(group: FinGroup, sub: FinGroup, embed,
                        chi: ClassFunction, g: int) -> ClassFunction:
    """The character h -> chi(g h g^-1) on a subgroup normalized by g."""
    parent_to_sub = {p: i for i, p in enumerate(embed)}
    values = []
    for cls in sub.conjugacy_classes():
        y = group.conj(g, embed[cls[0]])
        values.append(chi.values[sub.class_of(parent_to_sub[y])])
    return ClassFunction(sub, tuple(values))


def _row_lookup(table: CharacterTable) -> dict:
    return {row.values: i for i, row in enumerate(table.rows)}


def quotient_linear_characters(ctx: CliffordContext) -> list[tuple[AbCharacter, ClassFunction]]:
    """Characters of G/H pulled back to linear class functions on G."""
    out = []
    class_reps = [c[0] for c in ctx.group.conjugacy_classes()]
    for exps in ctx.q_ab.elements():
        chi = AbCharacter(ctx.q_ab, exps)
        values = tuple(chi.value(ctx.q_coords[ctx.proj[rep]]) for rep in class_reps)
        out.append((chi, ClassFunction(ctx.group, values)))
    return out


# ---------------------------------------------------------------------------
# orbits, extension towers, twist sets


@dataclass(frozen=True)
class OrbitData:
    """One conjugation orbit on Irr(H) with its extension tower data."""

    rep_row: int                         # smallest Irr(H) row index in the orbit
    orbit_rows: tuple[int, ...]
    stabilizer_q: tuple[int, ...]        # Q indices fixing the representative
    stabilizer_indices: tuple[int, ...]  # the subgroup G(rho) inside G
    extension_indices: tuple[int, ...]   # maximal extension subgroup
    extension_group: FinGroup
    extension_embed: tuple[int, ...]
    sigma: ClassFunction                 # extension of rho to the tower top
    twist_characters: tuple[tuple[CycNumber, ...], ...]
    # value tuples on extension-group classes of the twists measuring sigma^g / sigma


def _coset_order(group: FinGroup, g: int, members: frozenset) -> int:
    t = 1
    x = g
    while x not in members:
        x = group.mul(x, g)
        t += 1
    return t


def _character_group_of_quotient(group: FinGroup, over: FinGroup, over_embed,
                                 inner_indices) -> list[ClassFunction]:
    """Linear characters of over/inner as class functions on `over`.

    `inner_indices` are parent (G) indices; `over_embed` embeds `over` in G.
    """
    parent_to_over = {p: i for i, p in enumerate(over_embed)}
    inner_in_over = sorted(parent_to_over[i] for i in inner_indices)
    quot, proj = over.quotient(inner_in_over)
    ab, coords, _ = quot.to_ab_group()
    out = []
    class_reps = [c[0] for c in over.conjugacy_classes()]
    for exps in ab.elements():
        chi = AbCharacter(ab, exps)
        values = tuple(chi.value(coords[proj[rep]]) for rep in class_reps)
        out.append(ClassFunction(over, values))
    return out


def orbit_data(ctx: CliffordContext) -> list[OrbitData]:
    h_rows = ctx.table_h.rows
    lookup = _row_lookup(ctx.table_h)
    nrows = len(h_rows)

    action = {}
    for q in range(ctx.quot.order):
        g = ctx.coset_reps[q]
        for r in range(nrows):
            moved = conjugate_character(ctx.group, ctx.sub, ctx.embed, h_rows[r], g)
            action[(q, r)] = lookup[moved.values]

    out = []
    assigned = set()
    for rep in range(nrows):
        if rep in assigned:
            continue
        orbit = sorted({action[(q, rep)] for q in range(ctx.quot.order)})
        assigned.update(orbit)
        stab_q = tuple(q for q in range(ctx.quot.order) if action[(q, rep)] == rep)
        stab_idx = tuple(x for x in range(ctx.group.order) if ctx.proj[x] in set(stab_q))
        data = _extension_tower(ctx, rep, stab_idx)
        out.append(OrbitData(rep_row=rep, orbit_rows=tuple(orbit),
                             stabilizer_q=stab_q, stabilizer_indices=stab_idx,
                             **data))
    return out


def _extension_tower(ctx: CliffordContext, rep_row: int, stab_idx) -> dict:
    group = ctx.group
    K_indices = ctx.sub_indices
    K, K_embed = ctx.sub, ctx.embed
    sigma = ctx.table_h.rows[rep_row]

    while True:
        K_set = frozenset(K_indices)
        progressed = False
        for g in stab_idx:
            if g in K_set:
                continue
            if not isprime(_coset_order(group, g, K_set)):
                continue
            if conjugate_character(group, K, K_embed, sigma, g).values != sigma.values:
                continue
            new_indices = group.closure(list(K_indices) + [g])
            K_new, K_new_embed = group.subgroup(new_indices)
            parent_to_new = {p: i for i, p in enumerate(K_new_embed)}
            rel_embed = tuple(parent_to_new[p] for p in K_embed)
            extension = None
            for row in character_table(K_new).rows:
                if restrict(row, K, rel_embed).values == sigma.values:
                    extension = row
                    break
            if extension is None:
                raise AssertionError(
                    "invariant character failed to extend over a prime cyclic step")
            K_indices, K, K_embed, sigma = new_indices, K_new, K_new_embed, extension
            progressed = True
            break
        if not progressed:
            break

    # twist characters: for coset reps g of G(rho)/K, the unique linear
    # character of K/H with sigma^g = sigma * twist
    linear = _character_group_of_quotient(group, K, K_embed, ctx.sub_indices)
    K_set = frozenset(K_indices)
    covered = set()
    twists = []
    for g in stab_idx:
        if g in covered:
            continue
        covered.update(group.mul(k, g) for k in K_indices)
        moved = conjugate_character(group, K, K_embed, sigma, g)
        match = None
        for lam in linear:
            if (sigma * lam).values == moved.values:
                match = lam
                break
        if match is None:
            raise AssertionError("conjugate of the extension is not a twist of it")
        twists.append(match.values)
    if len(set(twists)) != len(twists):
        raise AssertionError("twist characters repeat across cosets")
    return {
        "extension_indices": K_indices,
        "extension_group": K,
        "extension_embed": K_embed,
        "sigma": sigma,
        "twist_characters": tuple(twists),
    }


# ---------------------------------------------------------------------------
# the five-check suite


@dataclass(frozen=True)
class OrbitReport:
    orbit: OrbitData
    multiplicity: int
    pi_rows: tuple[int, ...]             # Irr(G) rows lying over the orbit
    x_group_sizes: tuple[int, ...]       # |X(pi)| for each, in pi_rows order


@dataclass(frozen=True)
class CliffordReport:
    context: CliffordContext
    orbits: tuple[OrbitReport, ...]
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def verify_clifford_suite(ctx: CliffordContext) -> CliffordReport:
    checks = []

    def record(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    orbits = orbit_data(ctx)
    g_rows = ctx.table_g.rows
    g_lookup = _row_lookup(ctx.table_g)
    q_linear = quotient_linear_characters(ctx)

    # restriction shape of every irreducible of G
    restrictions = [ctx.table_h.decompose(restrict(row, ctx.sub, ctx.embed))
                    for row in g_rows]

    orbit_of_row = {}
    for k, od in enumerate(orbits):
        for r in od.orbit_rows:
            orbit_of_row[r] = k

    support_ok = True
    support_detail = ""
    pis_per_orbit = [[] for _ in orbits]
    mult_per_orbit = [None] * len(orbits)
    for i, mults in enumerate(restrictions):
        support = [r for r, m in enumerate(mults) if m]
        orbs = {orbit_of_row[r] for r in support}
        if len(orbs) != 1:
            support_ok = False
            support_detail = f"Irr(G) row {i} restricts across {len(orbs)} orbits"
            continue
        k = orbs.pop()
        od = orbits[k]
        if sorted(support) != list(od.orbit_rows):
            support_ok = False
            support_detail = f"Irr(G) row {i} misses part of orbit {k}"
        vals = {mults[r] for r in support}
        if len(vals) != 1:
            support_ok = False
            support_detail = f"Irr(G) row {i} has unequal constituent multiplicities"
        m = vals.pop()
        if mult_per_orbit[k] is None:
            mult_per_orbit[k] = m
        elif mult_per_orbit[k] != m:
            support_ok = False
            support_detail = f"orbit {k} appears with two different multiplicities"
        pis_per_orbit[k].append(i)
    record("restriction-single-orbit-support", support_ok, support_detail)
    record("every-orbit-arises", all(p for p in pis_per_orbit),
           "" if all(p for p in pis_per_orbit) else "an orbit has no character above it")

    # uniqueness of the lift up to quotient twists
    twist_ok = True
    twist_detail = ""
    for k, pis in enumerate(pis_per_orbit):
        if not pis:
            twist_ok = False
            continue
        base = g_rows[pis[0]]
        twisted = {g_lookup[(base * lam).values] for _, lam in q_linear}
        if twisted != set(pis):
            twist_ok = False
            twist_detail = (f"orbit {k}: twists of one lift give {sorted(twisted)}, "
                            f"expected {pis}")
    record("lift-unique-up-to-twist", twist_ok, twist_detail)

    # multiplicity equals the twist count
    mc_ok = True
    mc_detail = ""
    for k, od in enumerate(orbits):
        m = mult_per_orbit[k]
        if m != len(od.twist_characters):
            mc_ok = False
            mc_detail = (f"orbit {k}: multiplicity {m} != twist count "
                         f"{len(od.twist_characters)}")
        if len(od.twist_characters) * len(od.extension_indices) != len(od.stabilizer_indices):
            mc_ok = False
            mc_detail = f"orbit {k}: twist count does not match the tower index"
    record("multiplicity-equals-twist-count", mc_ok, mc_detail)

    # squared identity against the twist-stability group X(pi)
    x_sizes = [[] for _ in orbits]
    sq_ok = True
    sq_detail = ""
    for k, pis in enumerate(pis_per_orbit):
        od = orbits[k]
        index = ctx.group.order // len(od.stabilizer_indices)
        m = mult_per_orbit[k]
        for i in pis:
            x_size = sum(1 for _, lam in q_linear
                         if (g_rows[i] * lam).values == g_rows[i].values)
            x_sizes[k].append(x_size)
            if m * m * index != x_size:
                sq_ok = False
                sq_detail = (f"orbit {k}, Irr(G) row {i}: m^2 * index = "
                             f"{m * m * index} but |X| = {x_size}")
    record("multiplicity-squared-identity", sq_ok, sq_detail)

    # induction shape: Ind_H^G rho = |c| * sum over twist-coset reps of
    # Ind_{K}^G (sigma * omega)
    ind_ok = True
    ind_detail = ""
    for k, od in enumerate(orbits):
        rho = ctx.table_h.rows[od.rep_row]
        lhs = induce(rho, ctx.group, ctx.sub, ctx.embed)
        linear = _character_group_of_quotient(ctx.group, od.extension_group,
                                              od.extension_embed, ctx.sub_indices)
        twist_set = set(od.twist_characters)
        reps = []
        covered = set()
        for lam in linear:
            if lam.values in covered:
                continue
            reps.append(lam)
            covered.update((lam * t_lam).values
                           for t_lam in linear if t_lam.values in twist_set)
        total = None
        for lam in reps:
            piece = induce(od.sigma * lam, ctx.group,
                           od.extension_group, od.extension_embed)
            total = piece if total is None else total + piece
        scaled = len(od.twist_characters) * total
        if scaled.values != lhs.values:
            ind_ok = False
            ind_detail = f"orbit {k}: induction identity failed"
    record("induction-shape-identity", ind_ok, ind_detail)

    reports = tuple(OrbitReport(orbit=od, multiplicity=mult_per_orbit[k],
                                pi_rows=tuple(pis_per_orbit[k]),
                                x_group_sizes=tuple(x_sizes[k]))
                    for k, od in enumerate(orbits))
    return CliffordReport(context=ctx, orbits=reports, checks=tuple(checks))
