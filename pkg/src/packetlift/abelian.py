"""Finite abelian groups in invariant-factor form, homomorphisms, characters.

Groups are tuples of invariant factors ``(d_1, ..., d_r)`` with every
``d_i >= 2`` and ``d_i | d_(i+1)``; the trivial group is the empty tuple.
Elements are integer tuples reduced componentwise.  Kernels and images of
homomorphisms are computed exactly through Smith normal form lattice
arithmetic, never by enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .cycl import CycNumber

# ---------------------------------------------------------------------------
# integer matrices (lists of lists)


def mat_identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def int_det(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _mat_inverse_exact(matrix: list[list[int]]) -> list[list[int]]:
    """Inverse of an integer matrix whose inverse is again integral."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("inverse is not integral")
        out.append([v.numerator for v in vals])
    return out


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*M*V = D diagonal, U and V unimodular.

    Diagonal entries are nonnegative and satisfy the divisibility chain
    d_1 | d_2 | ..., with zero entries last.
    """
    M = [[int(v) for v in row] for row in matrix]
    m = len(M)
    n = len(M[0]) if m else 0
    if any(len(row) != n for row in M):
        raise ValueError("ragged matrix")
    U = mat_identity(m)
    V = mat_identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in M:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def diagonalize(start: int) -> None:
        t = start
        while t < min(m, n):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(M[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            swap_rows(t, best[1])
            swap_cols(t, best[2])
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if M[i][t]:
                        q = M[i][t] // M[t][t]
                        row_op(i, t, q)
                        if M[i][t]:  # remainder becomes the smaller pivot
                            swap_rows(i, t)
                            dirty = True
                for j in range(t + 1, n):
                    if M[t][j]:
                        q = M[t][j] // M[t][t]
                        col_op(j, t, q)
                        if M[t][j]:
                            swap_cols(j, t)
                            dirty = True
            t += 1

    diagonalize(0)

    r = min(m, n)
    # pivots are chosen nonzero-first, so zero diagonal entries already sit last
    seen_zero = False
    for i in range(r):
        if M[i][i] == 0:
            seen_zero = True
        elif seen_zero:
            raise AssertionError("zero pivot out of order")

    for i in range(r):
        if M[i][i] < 0:
            M[i] = [-v for v in M[i]]
            U[i] = [-v for v in U[i]]

    # enforce the divisibility chain with local 2x2 fixes
    changed = True
    while changed:
        changed = False
        for i in range(r):
            if M[i][i] == 0:
                continue
            for j in range(i + 1, r):
                if M[j][j] == 0 or M[j][j] % M[i][i] == 0:
                    continue
                changed = True
                col_op(i, j, -1)  # col_i += col_j, brings d_j into row j of col i
                while M[j][i]:
                    q = M[i][i] // M[j][i]
                    row_op(i, j, q)
                    swap_rows(i, j)
                # clear the off-diagonal remnants of the 2x2 block
                if M[i][j] % M[i][i]:
                    raise AssertionError("divisibility fix failed")
                col_op(j, i, M[i][j] // M[i][i])
                if M[j][j] < 0:
                    M[j] = [-v for v in M[j]]
                    U[j] = [-v for v in U[j]]
                break
            if changed:
                break
    return U, M, V


def invariant_factors_from_matrix(matrix) -> tuple[int, ...]:
    """Invariant factors (> 1) of the cokernel of an integer matrix."""
    _, d, _ = smith_normal_form(matrix)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i] > 1:
            out.append(d[i][i])
    return tuple(out)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in invariant-factor form."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors if int(d) != 1)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValueError(f"invalid invariant factor {d}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors violate divisibility: {fs}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def reduce(self, x) -> tuple[int, ...]:
        if len(x) != self.rank:
            raise ValueError(f"element {x} has wrong length for {self}")
        return tuple(int(v) % d for v, d in zip(x, self.invariant_factors))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d
                     for a, b, d in zip(x, y, self.invariant_factors, strict=True))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors, strict=True))

    def sub(self, x, y) -> tuple[int, ...]:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x) -> tuple[int, ...]:
        return tuple((k * a) % d
                     for a, d in zip(x, self.invariant_factors, strict=True))

    def element_order(self, x) -> int:
        x = self.reduce(x)
        return lcm(1, *(d // gcd(d, a) for a, d in zip(x, self.invariant_factors)))

    def describe(self) -> str:
        """Human-readable isomorphism type, e.g. ``(Z/2)^2`` or ``Z/2 x Z/4``."""
        fs = self.invariant_factors
        if not fs:
            return "trivial"
        if len(set(fs)) == 1 and len(fs) > 1:
            return f"(Z/{fs[0]})^{len(fs)}"
        return " x ".join(f"Z/{d}" for d in fs)


def dual_group(group: FinAbGroup) -> FinAbGroup:
    """The character group; same invariant factors."""
    return FinAbGroup(group.invariant_factors)


@dataclass(frozen=True)
class AbCharacter:
    """A character of a finite abelian group, stored by exponent tuple.

    The value at ``x`` is the rational rotation ``sum(c_i x_i / d_i) mod 1``,
    held exactly as a Fraction; ``value`` realizes it as a root of unity.
    """

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", self.group.reduce(self.exponents))

    def rotation(self, x) -> Fraction:
        x = self.group.reduce(x)
        total = sum(Fraction(c * v, d) for c, v, d in
                    zip(self.exponents, x, self.group.invariant_factors))
        return total % 1

    def value(self, x) -> CycNumber:
        rot = self.rotation(x)
        e = self.group.exponent
        return CycNumber.zeta(e, int(rot * e))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "AbCharacter") -> "AbCharacter":
        if other.group != self.group:
            raise ValueError("characters live on different groups")
        return AbCharacter(self.group, self.group.add(self.exponents, other.exponents))

    def inverse(self) -> "AbCharacter":
        return AbCharacter(self.group, self.group.neg(self.exponents))


def characters(group: FinAbGroup) -> list[AbCharacter]:
    """All characters, in lexicographic exponent order."""
    return [AbCharacter(group, exps) for exps in group.elements()]


def separating_character(group: FinAbGroup, x) -> AbCharacter:
    """A character that is nontrivial on x != 0 (witness for double duality)."""
    x = group.reduce(x)
    for i, v in enumerate(x):
        if v:
            exps = [0] * group.rank
            exps[i] = 1
            return AbCharacter(group, tuple(exps))
    raise ValueError("zero element has no separating character")


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class AbHom:
    """Homomorphism between finite abelian groups.

    ``matrix`` has one row per target generator and one column per source
    generator; column j is the image of the j-th source generator.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = [tuple(int(v) for v in row) for row in self.matrix]
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise ValueError("hom matrix shape mismatch")
        reduced = tuple(tuple(v % d for v in row)
                        for row, d in zip(rows, self.target.invariant_factors))
        object.__setattr__(self, "matrix", reduced)
        # well-definedness: the image of a generator dies under its order
        for j, dj in enumerate(self.source.invariant_factors):
            for i, di in enumerate(self.target.invariant_factors):
                if (dj * reduced[i][j]) % di:
                    raise ValueError(
                        f"map is not well defined: generator {j} of order {dj} "
                        f"maps outside the {di}-torsion")

    @staticmethod
    def zero(source: FinAbGroup, target: FinAbGroup) -> "AbHom":
        return AbHom(source, target,
                     tuple((0,) * source.rank for _ in range(target.rank)))

    @staticmethod
    def identity(group: FinAbGroup) -> "AbHom":
        return AbHom(group, group,
                     tuple(tuple(int(i == j) for j in range(group.rank))
                           for i in range(group.rank)))

    def apply(self, x) -> tuple[int, ...]:
        x = self.source.reduce(x)
        return tuple(sum(row[j] * x[j] for j in range(len(x))) % d
                     for row, d in zip(self.matrix, self.target.invariant_factors))

    def compose(self, inner: "AbHom") -> "AbHom":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        if self.source.rank == 0:
            return AbHom.zero(inner.source, self.target)
        prod_rows = mat_mul([list(r) for r in self.matrix],
                            [list(r) for r in inner.matrix])
        return AbHom(inner.source, self.target, tuple(tuple(r) for r in prod_rows))

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.matrix)


@dataclass(frozen=True)
class SubgroupData:
    """A subgroup in abstract invariant-factor form plus ambient generators."""

    group: FinAbGroup
    ambient: FinAbGroup
    generators: tuple[tuple[int, ...], ...]  # one per abstract invariant factor

    def embed(self, x) -> tuple[int, ...]:
        """Image in the ambient group of an abstract element x."""
        x = self.group.reduce(x)
        out = self.ambient.zero
        for coeff, gen in zip(x, self.generators):
            out = self.ambient.add(out, self.ambient.scale(coeff, gen))
        return out

    def elements(self) -> frozenset:
        return frozenset(self.embed(x) for x in self.group.elements())


def _column_lattice_basis(columns: list[list[int]], rank: int) -> list[list[int]]:
    """Basis (as columns) of the lattice spanned by the given columns in Z^rank."""
    if not columns:
        raise ValueError("need at least one generator")
    G = [[col[i] for col in columns] for i in range(rank)]
    U, D, _ = smith_normal_form(G)
    Uinv = _mat_inverse_exact(U)
    basis = []
    for i in range(min(rank, len(columns))):
        if D[i][i]:
            basis.append([Uinv[r][i] * D[i][i] for r in range(rank)])
    if len(basis) != rank:
        raise ValueError("generators do not span a full-rank lattice")
    return basis  # list of columns


def subgroup_from_generators(ambient: FinAbGroup, gens) -> SubgroupData:
    """Subgroup of `ambient` generated by the given elements, via SNF.

    Works entirely with lattices: the subgroup is L/R where R is the
    relation lattice of the ambient presentation and L is spanned by the
    generators together with R.
    """
    r = ambient.rank
    gen_list = [list(ambient.reduce(g)) for g in gens]
    if r == 0:
        return SubgroupData(FinAbGroup(), ambient, ())
    relation_cols = [[ambient.invariant_factors[i] * int(i == j) for i in range(r)]
                     for j in range(r)]
    basis_cols = _column_lattice_basis(gen_list + relation_cols, r)
    B = [[basis_cols[j][i] for j in range(r)] for i in range(r)]
    # C = B^-1 * diag(factors); solve exactly over Q and demand integrality
    n = r
    aug = [[Fraction(B[i][j]) for j in range(n)] +
           [Fraction(ambient.invariant_factors[j] * int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((row for row in range(col, n) if aug[row][col]), None)
        if pivot is None:
            raise AssertionError("lattice basis not full rank")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for row in range(n):
            if row != col and aug[row][col]:
                f = aug[row][col]
                aug[row] = [v - f * w for v, w in zip(aug[row], aug[col])]
    C = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise AssertionError("relation lattice does not sit inside the span")
        C.append([v.numerator for v in vals])

    U2, D2, _ = smith_normal_form(C)
    U2inv = _mat_inverse_exact(U2)
    factors = []
    gens_out = []
    for i in range(r):
        d = D2[i][i]
        if d == 0:
            raise AssertionError("unexpected infinite quotient")
        if d == 1:
            continue
        factors.append(d)
        col = [sum(B[row][k] * U2inv[k][i] for k in range(r)) for row in range(r)]
        gens_out.append(ambient.reduce(tuple(col)))
    group = FinAbGroup(tuple(factors))
    data = SubgroupData(group, ambient, tuple(gens_out))
    for f, g in zip(factors, gens_out):
        if ambient.element_order(g) != f:
            raise AssertionError("subgroup generator order mismatch")
    return data


def hom_kernel_image(f: AbHom) -> tuple[SubgroupData, SubgroupData]:
    """Exact kernel and image of a homomorphism, with the order identity
    |kernel| * |image| = |source| asserted."""
    s, t = f.source.rank, f.target.rank
    # kernel: x with M x in T Z^t, i.e. x-parts of the integer kernel of [M | T]
    if s == 0:
        kernel = SubgroupData(FinAbGroup(), f.source, ())
    else:
        W = [[f.matrix[i][j] for j in range(s)] +
             [f.target.invariant_factors[i] * int(i == k) for k in range(t)]
             for i in range(t)] or [[0] * (s + t)]
        _, D, V = smith_normal_form(W)
        rank_w = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
        ker_cols = []
        for j in range(rank_w, s + t):
            ker_cols.append([V[i][j] for i in range(s)])
        # the relation lattice is added inside subgroup_from_generators
        gens = [tuple(c) for c in ker_cols] or [f.source.zero]
        kernel = subgroup_from_generators(f.source, gens)
    if t == 0:
        image = SubgroupData(FinAbGroup(), f.target, ())
    else:
        cols = [tuple(f.matrix[i][j] for i in range(t)) for j in range(s)]
        image = subgroup_from_generators(f.target, cols or [f.target.zero])
    if kernel.group.order * image.group.order != f.source.order:
        raise AssertionError("kernel/image order identity failed")
    return kernel, image


# ---------------------------------------------------------------------------
# small-group enumeration helpers (used where groups are tiny by construction)


def subgroup_elements(ambient: FinAbGroup, gens) -> frozenset:
    """Closure of the given elements under addition."""
    seen = {ambient.zero}
    frontier = [ambient.zero]
    gens = [ambient.reduce(g) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ambient.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def cosets(ambient: FinAbGroup, subgroup: frozenset) -> tuple[tuple[tuple[int, ...], ...], dict]:
    """Cosets of a subgroup: (sorted canonical representatives, element -> rep)."""
    rep_of = {}
    reps = []
    for x in ambient.elements():
        if x in rep_of:
            continue
        coset = sorted(ambient.add(x, h) for h in subgroup)
        rep = coset[0]
        reps.append(rep)
        for y in coset:
            rep_of[y] = rep
    return tuple(sorted(reps)), rep_of


def annihilator(group: FinAbGroup, elements) -> tuple[AbCharacter, ...]:
    """Characters trivial on all given elements (enumeration; small groups)."""
    elems = [group.reduce(x) for x in elements]
    out = [chi for chi in characters(group)
           if all(chi.rotation(x) == 0 for x in elems)]
    return tuple(out)
