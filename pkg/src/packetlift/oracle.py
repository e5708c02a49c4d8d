"""Matrix-side oracle for component groups.

Takes an explicit orthogonal matrix realization of a parameter (generators
with exact rational or cyclotomic entries), recovers the centralizer sign
patterns from spectral projectors of the commutant algebra, and compares
them with the combinatorial construction in params.py.  The two routes
share no code beyond the generic linear algebra helpers.

Scope: multiplicity-free realizations whose commutant is commutative and
splits over the rationals (every block of real type).  Anything else
raises OracleUnsupported rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from sympy import divisors

from .cycl import CycNumber
from .linalg import (det, identity_matrix, mat_mul, mat_sub, nullspace, rref,
                     scalar_mul, solve_in_columns, trace, transpose)
from .params import (SD_ORTH, ClassicalParameter, ComponentGroupData, _f2_add,
                     component_group)

MAX_IMAGE_ORDER = 1024


class OracleUnsupported(ValueError):
    """The realization falls outside what the matrix oracle can certify."""


class OracleMismatch(ValueError):
    """The realization contradicts the declared parameter."""


# ---------------------------------------------------------------------------
# matrix-group plumbing


def _normalize_generators(generators):
    """Coerce entries to a single exact scalar type.

    All-rational input becomes Fraction matrices.  If any entry is
    cyclotomic, every entry is lifted to one common order so that equal
    values hash equally inside the closure dictionary.
    """
    if not generators:
        return [], 0
    size = len(generators[0])
    order = 1
    has_cyc = False
    for g in generators:
        if len(g) != size or any(len(row) != size for row in g):
            raise OracleUnsupported("generators must be square and equal-sized")
        for row in g:
            for x in row:
                if isinstance(x, CycNumber):
                    has_cyc = True
                    order = lcm(order, x.order)

    def conv(x):
        if isinstance(x, CycNumber):
            return x.lift(order)
        if has_cyc:
            return CycNumber.from_rational(Fraction(x), order)
        return Fraction(x)

    return [tuple(tuple(conv(x) for x in row) for row in g) for g in generators], size


def _check_orthogonal(mat):
    n = len(mat)
    prod = mat_mul(transpose(mat), mat)
    for i in range(n):
        for j in range(n):
            if prod[i][j] != (1 if i == j else 0):
                return False
    return True


def _closure(generators, size):
    """All products of the generators, as hashable tuples."""
    ident = tuple(tuple(1 if i == j else 0 for j in range(size))
                  for i in range(size))
    if generators and isinstance(generators[0][0][0], Fraction):
        one = Fraction(1)
        ident = tuple(tuple(one * v for v in row) for row in ident)
    elif generators and isinstance(generators[0][0][0], CycNumber):
        order = generators[0][0][0].order
        one = CycNumber.from_rational(Fraction(1), order)
        zero = CycNumber.from_rational(Fraction(0), order)
        ident = tuple(tuple(one if i == j else zero for j in range(size))
                      for i in range(size))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                p = tuple(tuple(v for v in row) for row in mat_mul(m, g))
                if p not in seen:
                    if len(seen) >= MAX_IMAGE_ORDER:
                        raise OracleUnsupported(
                            f"matrix group exceeds {MAX_IMAGE_ORDER} elements")
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(seen, key=_matrix_sort_key)


def _matrix_sort_key(mat):
    out = []
    for row in mat:
        for v in row:
            if isinstance(v, CycNumber):
                out.extend(v.sort_key(v.order))
            else:
                out.append(v)
    return tuple(out)


def _flatten(mat):
    return [v for row in mat for v in row]


def _trace_product(a, b):
    n = len(a)
    return sum(a[i][j] * b[j][i] for i in range(n) for j in range(n))


def _as_int(value, what):
    if isinstance(value, CycNumber):
        if not value.is_rational():
            raise OracleUnsupported(f"{what} is not rational")
        value = value.to_fraction()
    frac = Fraction(value)
    if frac.denominator != 1:
        raise OracleUnsupported(f"{what} is not an integer: {frac}")
    return int(frac)


# ---------------------------------------------------------------------------
# commutant, spectrum, projectors


def _commutant_basis(generators, size):
    """Basis of the algebra of matrices commuting with every generator."""
    if not generators:
        basis = []
        for i in range(size):
            for j in range(size):
                vec = [Fraction(0)] * (size * size)
                vec[i * size + j] = Fraction(1)
                basis.append(vec)
        return [_unflatten(v, size) for v in basis]
    rows = []
    for g in generators:
        for i in range(size):
            for j in range(size):
                row = [0 * g[0][0]] * (size * size)
                for kk in range(size):
                    row[i * size + kk] = row[i * size + kk] + g[kk][j]
                    row[kk * size + j] = row[kk * size + j] - g[i][kk]
                rows.append(row)
    return [_unflatten(v, size) for v in nullspace(rows)]


def _unflatten(vec, size):
    return [list(vec[i * size:(i + 1) * size]) for i in range(size)]


def _matrices_commute(a, b):
    lhs = mat_mul(a, b)
    rhs = mat_mul(b, a)
    return all(lhs[i][j] == rhs[i][j]
               for i in range(len(a)) for j in range(len(a)))


def _minimal_polynomial(c, size, max_degree):
    """Monic coefficients [a_0, ..., a_{d-1}] with c^d = sum a_j c^j."""
    powers = [_flatten(identity_matrix(size))]
    cur = identity_matrix(size)
    for _ in range(max_degree):
        cur = mat_mul(cur, c)
        coeffs = solve_in_columns(powers, _flatten(cur))
        if coeffs is not None:
            return coeffs
        powers.append(_flatten(cur))
    raise OracleUnsupported("commutant element has no short minimal polynomial")


def _rational_roots(coeffs):
    """Distinct rational roots of x^d - sum coeffs[j] x^j."""
    d = len(coeffs)
    poly = [-Fraction(_to_fraction(a)) for a in coeffs] + [Fraction(1)]
    denom = lcm(*(c.denominator for c in poly))
    ints = [int(c * denom) for c in poly]
    lead = abs(ints[-1])
    const = ints[0]
    candidates = {Fraction(0)} if const == 0 else set()
    if const != 0:
        for p in divisors(abs(const)):
            for q in divisors(lead):
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
    elif d > 1:
        lowest = next(i for i, c in enumerate(ints) if c != 0)
        if lowest < d:
            for p in divisors(abs(ints[lowest])):
                for q in divisors(lead):
                    candidates.add(Fraction(p, q))
                    candidates.add(Fraction(-p, q))
    roots = []
    for cand in sorted(candidates):
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * cand + c
        if acc == 0:
            roots.append(cand)
    return roots


def _to_fraction(value):
    if isinstance(value, CycNumber):
        if not value.is_rational():
            raise OracleUnsupported("commutant spectrum is not rational")
        return value.to_fraction()
    return Fraction(value)


def _spectral_projectors(basis, size):
    """Orthogonal idempotents spanning a commutative split commutant.

    Tries a few weightings of the basis until one element has simple
    rational spectrum separating all blocks; each failure to split is a
    genuine obstruction and raises.
    """
    r = len(basis)
    for power in range(1, r + 3):
        c = [[Fraction(0)] * size for _ in range(size)]
        for idx, b in enumerate(basis):
            w = (idx + 1) ** power
            c = [[c[i][j] + w * b[i][j] for j in range(size)]
                 for i in range(size)]
        coeffs = _minimal_polynomial(c, size, r)
        d = len(coeffs)
        roots = _rational_roots(coeffs)
        if len(roots) < d:
            raise OracleUnsupported(
                "commutant spectrum does not split over the rationals")
        if d < r:
            continue  # eigenvalue collision for this weighting; re-weight
        projectors = []
        for lam_i in roots:
            prod = identity_matrix(size)
            scale = Fraction(1)
            for lam_j in roots:
                if lam_j == lam_i:
                    continue
                shifted = mat_sub(c, scalar_mul(lam_j, identity_matrix(size)))
                prod = mat_mul(prod, shifted)
                scale *= lam_i - lam_j
            projectors.append(scalar_mul(1 / scale, prod))
        return projectors
    raise OracleUnsupported("could not separate commutant blocks by weighting")


def _verify_projectors(projectors, size, generators):
    total = [[Fraction(0)] * size for _ in range(size)]
    for idx, p in enumerate(projectors):
        if not _matrices_equal(mat_mul(p, p), p):
            raise OracleUnsupported(f"projector {idx} is not idempotent")
        if not _matrices_equal(transpose(p), p):
            raise OracleUnsupported(f"projector {idx} is not symmetric")
        for g in generators:
            if not _matrices_commute(p, g):
                raise OracleUnsupported(f"projector {idx} leaves the commutant")
        for jdx, q in enumerate(projectors):
            if jdx > idx and not _is_zero_matrix(mat_mul(p, q)):
                raise OracleUnsupported(f"projectors {idx},{jdx} overlap")
        total = [[total[i][j] + p[i][j] for j in range(size)]
                 for i in range(size)]
    if not _matrices_equal(total, identity_matrix(size)):
        raise OracleUnsupported("projectors do not resolve the identity")


def _matrices_equal(a, b):
    return all(a[i][j] == b[i][j] for i in range(len(a)) for j in range(len(a)))


def _is_zero_matrix(a):
    return all(not a[i][j] for i in range(len(a)) for j in range(len(a)))


# ---------------------------------------------------------------------------
# oracle proper


@dataclass(frozen=True)
class OracleBlock:
    summand_id: str
    dim: int
    start: int                # first row the block projector touches
    frobenius_schur: int
    norm_squared: int


@dataclass(frozen=True)
class OracleOutcome:
    group_order: int
    carrier_ids: tuple[str, ...]
    blocks: tuple[OracleBlock, ...]           # aligned with carrier_ids
    pattern_dets: tuple[tuple[tuple[int, ...], int], ...]
    a_vectors: frozenset
    theta_patterns_nonempty: bool
    a_invariant_factors: tuple[int, ...]
    s_bar_order: int
    sigma0_order: int
    s_bar_cosets: frozenset


def commutant_oracle(generators, parameter: ClassicalParameter) -> OracleOutcome:
    """Recover the sign-pattern data of a parameter from a matrix realization.

    The realization must be block-diagonalizable into pairwise inequivalent
    rationally irreducible orthogonal blocks, one per declared summand.
    """
    parameter.validate()
    for s in parameter.summands:
        if s.sd_type != SD_ORTH or s.multiplicity != 1:
            raise OracleUnsupported(
                f"summand {s.ident!r} is not multiplicity-free orthogonal; "
                "the matrix oracle only certifies that case")
    carriers = parameter.carriers()
    mats, size = _normalize_generators(generators)
    if size != parameter.dual_dimension:
        raise OracleMismatch(
            f"realization acts on dimension {size}, parameter requires "
            f"{parameter.dual_dimension}")
    for idx, g in enumerate(mats):
        if not _check_orthogonal(g):
            raise OracleMismatch(f"generator {idx} is not orthogonal")

    elements = _closure(mats, size)
    order = len(elements)

    basis_raw = _commutant_basis(mats, size)
    flat_rows, _ = rref([_flatten(b) for b in basis_raw])
    basis = [_unflatten(row, size) for row in flat_rows]
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            if not _matrices_commute(a, b):
                raise OracleUnsupported(
                    "commutant is noncommutative (repeated or non-real block)")

    projectors = _spectral_projectors(basis, size)
    _verify_projectors(projectors, size, mats)
    k = len(projectors)
    if k != len(carriers):
        raise OracleMismatch(
            f"realization has {k} blocks, parameter declares {len(carriers)}")

    squares = [mat_mul(m, m) for m in elements]
    raw_blocks = []
    for p in projectors:
        dim = _as_int(trace(p), "projector trace")
        start = next(i for i in range(size) if any(p[i][j] for j in range(size)))
        fs_sum = sum(_trace_product(p, sq) for sq in squares)
        fs = Fraction(_to_fraction(fs_sum)) / order
        if fs.denominator != 1 or int(fs) not in (-1, 0, 1):
            raise OracleUnsupported(f"indicator {fs} is not in {{-1,0,1}}")
        norm_sum = sum(
            _to_fraction(_trace_product(p, m)) *
            _to_fraction(_trace_product(p, transpose(m)))
            for m in elements)
        norm = Fraction(norm_sum) / order
        if norm.denominator != 1:
            raise OracleUnsupported("block character norm is not an integer")
        raw_blocks.append((start, dim, int(fs), int(norm), p))
    raw_blocks.sort(key=lambda b: b[0])

    # match blocks to carriers: within each dimension, in discovery order
    if sorted(b[1] for b in raw_blocks) != sorted(c.dim for c in carriers):
        raise OracleMismatch(
            f"block dimensions {sorted(b[1] for b in raw_blocks)} do not match "
            f"declared dimensions {sorted(c.dim for c in carriers)}")
    unused = list(range(k))
    block_to_carrier = {}
    for bidx, blk in enumerate(raw_blocks):
        cidx = next(i for i in unused if carriers[i].dim == blk[1])
        unused.remove(cidx)
        block_to_carrier[bidx] = cidx
    blocks = [None] * k
    for bidx, (start, dim, fs, norm, _p) in enumerate(raw_blocks):
        cidx = block_to_carrier[bidx]
        blocks[cidx] = OracleBlock(summand_id=carriers[cidx].ident, dim=dim,
                                   start=start, frobenius_schur=fs,
                                   norm_squared=norm)

    # enumerate sign patterns with honest determinants
    ident = identity_matrix(size)
    pattern_dets = []
    a_vectors = set()
    theta_seen = False
    for bits in range(2 ** k):
        eps_blocks = [(bits >> b) & 1 for b in range(k)]
        t = [row[:] for row in ident]
        for bidx, on in enumerate(eps_blocks):
            if on:
                p = raw_blocks[bidx][4]
                t = [[t[i][j] - 2 * p[i][j] for j in range(size)]
                     for i in range(size)]
        d_honest = _to_fraction(det(t))
        d_formula = 1
        for bidx, on in enumerate(eps_blocks):
            if on and raw_blocks[bidx][1] % 2:
                d_formula = -d_formula
        if d_honest != d_formula:
            raise OracleUnsupported(
                f"determinant routes disagree: {d_honest} vs {d_formula}")
        if not _matrices_equal(mat_mul(transpose(t), t), ident):
            raise OracleUnsupported("sign pattern is not orthogonal")
        for g in mats:
            if not _matrices_commute(t, g):
                raise OracleUnsupported("sign pattern leaves the centralizer")
        vec = [0] * k
        for bidx, on in enumerate(eps_blocks):
            vec[block_to_carrier[bidx]] = on
        vec = tuple(vec)
        d_int = int(d_honest)
        pattern_dets.append((vec, d_int))
        if d_int == 1:
            a_vectors.add(vec)
        else:
            theta_seen = True
    pattern_dets.sort()

    # honest subgroup check before reading off invariant factors
    if (0,) * k not in a_vectors:
        raise OracleUnsupported("trivial pattern has determinant -1")
    for u in a_vectors:
        for v in a_vectors:
            if _f2_add(u, v) not in a_vectors:
                raise OracleUnsupported("det-1 patterns are not closed")
    a_order = len(a_vectors)
    rank = a_order.bit_length() - 1
    if 2 ** rank != a_order:
        raise OracleUnsupported("det-1 pattern count is not a power of two")

    z = (1,) * k
    if parameter.is_symplectic_kind:
        s_bar_cosets = frozenset(frozenset({v}) for v in a_vectors)
        s_bar_order = a_order
        sigma0_order = a_order
    else:
        if z not in a_vectors:
            raise OracleUnsupported("central pattern escapes the det-1 set")
        s_bar_cosets = frozenset(frozenset({v, _f2_add(v, z)})
                                 for v in a_vectors)
        s_bar_order = len(s_bar_cosets)
        sigma0_order = 2 ** k // 2 if k else 1

    return OracleOutcome(
        group_order=order,
        carrier_ids=tuple(c.ident for c in carriers),
        blocks=tuple(blocks),
        pattern_dets=tuple(pattern_dets),
        a_vectors=frozenset(a_vectors),
        theta_patterns_nonempty=theta_seen,
        a_invariant_factors=(2,) * rank,
        s_bar_order=s_bar_order,
        sigma0_order=sigma0_order,
        s_bar_cosets=s_bar_cosets,
    )


# ---------------------------------------------------------------------------
# comparison with the combinatorial construction


@dataclass(frozen=True)
class OracleComparison:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(ok for _name, ok, _detail in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]


def compare_with_component_data(oracle: OracleOutcome,
                                data: ComponentGroupData) -> OracleComparison:
    checks = []

    formula_vectors = frozenset(data.vector_of_a(x)
                                for x in data.a_phi.elements())
    checks.append(("a-phi-vectors-equal",
                   formula_vectors == oracle.a_vectors,
                   f"formula {sorted(formula_vectors)} vs "
                   f"oracle {sorted(oracle.a_vectors)}"))

    checks.append(("a-phi-invariant-factors",
                   data.a_phi.invariant_factors == oracle.a_invariant_factors,
                   f"{data.a_phi.invariant_factors} vs "
                   f"{oracle.a_invariant_factors}"))

    labels_ok = True
    label_detail = []
    for vec, label in zip(data.a_basis_vectors, data.basis_labels):
        in_oracle = vec in oracle.a_vectors
        blk = next((b for b in oracle.blocks if b.summand_id == label), None)
        declared = next(s for s in data.parameter.summands if s.ident == label)
        dim_ok = blk is not None and blk.dim == declared.dim
        labels_ok = labels_ok and in_oracle and dim_ok
        label_detail.append(f"{label}: vector realized={in_oracle}, "
                            f"block dim matches={dim_ok}")
    checks.append(("basis-labels-realized", labels_ok,
                   "; ".join(label_detail) or "no generators"))

    if data.parameter.is_symplectic_kind:
        formula_cosets = frozenset(frozenset({v}) for v in formula_vectors)
    else:
        z = data.z_vector
        formula_cosets = frozenset(frozenset({v, _f2_add(v, z)})
                                   for v in formula_vectors)
    checks.append(("s-bar-structure",
                   data.s_bar.order == oracle.s_bar_order
                   and formula_cosets == oracle.s_bar_cosets,
                   f"order {data.s_bar.order} vs {oracle.s_bar_order}"))

    checks.append(("sigma0-order",
                   data.s_bar_sigma0.order == oracle.sigma0_order,
                   f"{data.s_bar_sigma0.order} vs {oracle.sigma0_order}"))

    if data.parameter.is_symplectic_kind:
        checks.append(("theta0-flag", data.theta0_coset_nonempty is False,
                       "fixed empty for the symplectic kind"))
    else:
        checks.append(("theta0-flag",
                       data.theta0_coset_nonempty
                       == oracle.theta_patterns_nonempty,
                       f"formula {data.theta0_coset_nonempty} vs "
                       f"oracle {oracle.theta_patterns_nonempty}"))

    checks.append(("blocks-real-orthogonal",
                   all(b.frobenius_schur == 1 for b in oracle.blocks),
                   str([b.frobenius_schur for b in oracle.blocks])))
    checks.append(("blocks-irreducible",
                   all(b.norm_squared == 1 for b in oracle.blocks),
                   str([b.norm_squared for b in oracle.blocks])))

    return OracleComparison(checks=tuple(checks))


def oracle_comparison(generators, parameter: ClassicalParameter) -> OracleComparison:
    """Run both routes on one parameter and compare every shared datum."""
    data = component_group(parameter)
    outcome = commutant_oracle(generators, parameter)
    return compare_with_component_data(outcome, data)
