"""Exact complex character tables of finite groups.

The table is computed over a finite field F_p (p = 1 mod exponent, p larger
than twice any character-value bound) by simultaneous diagonalization of the
class multiplication matrices, then lifted exactly to cyclotomic numbers by
an eigenvalue-multiplicity transform.  No floating point anywhere.

Rows are sorted by (degree, value vector); columns follow the conjugacy
class order of the group (element order, then smallest element index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy.ntheory import nextprime, primitive_root, sqrt_mod

from .cycl import CycNumber
from .groups import FinGroup

# ---------------------------------------------------------------------------
# dense linear algebra over F_p


def _mat_vec_mod(m, v, p):
    return tuple(sum(mi * vi for mi, vi in zip(row, v)) % p for row in m)


def _rref_mod(rows, p):
    """Reduced row echelon form over F_p; returns (rref_rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _nullspace_mod(matrix, p):
    """Basis of the right nullspace of a square matrix over F_p."""
    n = len(matrix)
    rref, pivots = _rref_mod(matrix, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref[r][fc]) % p
        basis.append(tuple(v))
    return basis


def _charpoly_mod(a, p):
    """Characteristic polynomial coefficients [1, c1, ..., cn] over F_p
    (Faddeev-LeVerrier; needs p > n)."""
    n = len(a)
    coeffs = [1]
    N = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        M = [[sum(a[i][t] * N[t][j] for t in range(n)) % p for j in range(n)]
             for i in range(n)]
        tr = sum(M[i][i] for i in range(n)) % p
        ck = (-tr * pow(k, -1, p)) % p
        coeffs.append(ck)
        N = [[(M[i][j] + (ck if i == j else 0)) % p for j in range(n)]
             for i in range(n)]
    return coeffs


def _poly_roots_mod(coeffs, p):
    """All roots in F_p with multiplicity ignored, by direct scan."""
    roots = []
    for x in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _solve_in_span(basis, targets, p):
    """Write each target vector as a combination of the basis vectors.

    basis: list of d vectors of length n; targets: list of vectors.
    Returns list of coefficient tuples (length d).  Raises if not in span.
    """
    d = len(basis)
    n = len(basis[0])
    aug = [[basis[j][i] for j in range(d)] + [t[i] for t in targets]
           for i in range(n)]
    rref, pivots = _rref_mod(aug, p)
    if any(c >= d for c in pivots):
        raise ArithmeticError("target vector outside the span")
    coeffs = []
    for t in range(len(targets)):
        vec = [0] * d
        for r, pc in enumerate(pivots):
            vec[pc] = rref[r][d + t]
        coeffs.append(tuple(vec))
    return coeffs


# ---------------------------------------------------------------------------
# class functions


@dataclass(frozen=True)
class ClassFunction:
    """A class function with exact cyclotomic values, stored per class."""

    group: FinGroup
    values: tuple[CycNumber, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.conjugacy_classes()):
            raise ValueError("one value per conjugacy class required")

    def value_at(self, element_index: int) -> CycNumber:
        return self.values[self.group.class_of(element_index)]

    @property
    def degree(self) -> CycNumber:
        return self.value_at(self.group.identity)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group,
                             tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group,
                                 tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.group, tuple(v * other for v in self.values))

    __rmul__ = __mul__

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def sort_key(self, order: int):
        return tuple(v.sort_key(order) for v in self.values)


def inner_product(f: ClassFunction, g: ClassFunction) -> CycNumber:
    """<f, g> = (1/|G|) sum f(x) conj(g(x)), exact."""
    if f.group is not g.group:
        raise ValueError("class functions live on different groups")
    grp = f.group
    total = CycNumber.from_rational(0)
    for k, cls in enumerate(grp.conjugacy_classes()):
        total = total + len(cls) * (f.values[k] * g.values[k].conjugate())
    return total / grp.order


def trivial_character(group: FinGroup) -> ClassFunction:
    one = CycNumber.from_rational(1)
    return ClassFunction(group, tuple(one for _ in group.conjugacy_classes()))


def restrict(f: ClassFunction, sub: FinGroup, embed) -> ClassFunction:
    """Restriction along an embedding (embed[i] = parent index of sub elt i)."""
    values = []
    for cls in sub.conjugacy_classes():
        values.append(f.value_at(embed[cls[0]]))
    return ClassFunction(sub, tuple(values))


def induce(f: ClassFunction, group: FinGroup, sub: FinGroup, embed) -> ClassFunction:
    """Induction of a class function from a subgroup, by the sum over the
    whole group of the zero-extension at conjugates."""
    parent_to_sub = {embed[i]: i for i in range(sub.order)}
    values = []
    for cls in group.conjugacy_classes():
        rep = cls[0]
        total = CycNumber.from_rational(0)
        for x in range(group.order):
            y = group.conj(group.inv(x), rep)
            s = parent_to_sub.get(y)
            if s is not None:
                total = total + f.value_at(s)
        values.append(total / sub.order)
    return ClassFunction(group, tuple(values))


# ---------------------------------------------------------------------------
# the table


@dataclass(frozen=True)
class CharacterTable:
    group: FinGroup
    exponent: int
    prime: int
    rows: tuple[ClassFunction, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.degree.to_int() for r in self.rows)

    def decompose(self, f: ClassFunction) -> tuple[int, ...]:
        """Multiplicities of each irreducible in a character."""
        out = []
        for chi in self.rows:
            ip = inner_product(f, chi)
            if not ip.is_rational():
                raise ValueError("inner product is not rational")
            frac = ip.to_fraction()
            if frac.denominator != 1:
                raise ValueError("inner product is not integral")
            out.append(int(frac))
        return tuple(out)


def _group_exponent(group: FinGroup) -> int:
    return math.lcm(*(group.element_order(c[0]) for c in group.conjugacy_classes()))


def _choose_prime(group: FinGroup, exponent: int) -> int:
    classes = group.conjugacy_classes()
    max_class = max(len(c) for c in classes)
    # big enough that every lifted integer (degrees, eigenvalue multiplicities,
    # structure constants) sits in (-p/2, p/2), and > #classes so the
    # Faddeev-LeVerrier divisions are invertible
    bound = max(2 * (math.isqrt(group.order) + 1) * max_class + 2,
                len(classes) + 2)
    p = bound
    while True:
        p = int(nextprime(p))
        if (p - 1) % exponent == 0:
            return p


def _class_matrices(group: FinGroup):
    classes = group.conjugacy_classes()
    r = len(classes)
    reps = [c[0] for c in classes]
    mats = []
    for j in range(r):
        m = [[0] * r for _ in range(r)]
        for col, rep in enumerate(reps):
            for x in classes[j]:
                l = group.class_of(group.mul(group.inv(x), rep))
                m[l][col] += 1
        mats.append(m)
    return mats


def _common_eigenvectors(mats, p):
    """Split F_p^r into the common one-dimensional eigenspaces of the
    commuting class matrices."""
    r = len(mats)
    spaces = [[tuple(int(i == j) for j in range(r)) for i in range(r)]]
    for m in mats[1:]:  # the identity class matrix is the identity
        if all(len(s) == 1 for s in spaces):
            break
        refined = []
        for basis in spaces:
            d = len(basis)
            if d == 1:
                refined.append(basis)
                continue
            images = [_mat_vec_mod(m, v, p) for v in basis]
            A_cols = _solve_in_span(basis, images, p)  # column j = coeffs of image j
            A = [[A_cols[j][i] for j in range(d)] for i in range(d)]
            poly = _charpoly_mod(A, p)
            roots = _poly_roots_mod(poly, p)
            pieces = []
            total = 0
            for lam in roots:
                shifted = [[(A[i][j] - (lam if i == j else 0)) % p
                            for j in range(d)] for i in range(d)]
                null = _nullspace_mod(shifted, p)
                if not null:
                    continue
                total += len(null)
                sub_basis = []
                for coeffs in null:
                    vec = [0] * r
                    for c, bv in zip(coeffs, basis):
                        for i in range(r):
                            vec[i] = (vec[i] + c * bv[i]) % p
                    sub_basis.append(tuple(vec))
                pieces.append(sub_basis)
            if total != d:
                raise ArithmeticError("class algebra failed to diagonalize")
            refined.extend(pieces)
        spaces = refined
    if not all(len(s) == 1 for s in spaces):
        raise ArithmeticError("class matrices did not separate the characters")
    return [s[0] for s in spaces]


_TABLE_CACHE: dict[int, CharacterTable] = {}


def character_table(group: FinGroup) -> CharacterTable:
    """The full table of irreducible complex characters, exactly."""
    cached = _TABLE_CACHE.get(id(group))
    if cached is not None and cached.group is group:
        return cached

    classes = group.conjugacy_classes()
    r = len(classes)
    reps = [c[0] for c in classes]
    sizes = [len(c) for c in classes]
    inv_class = [group.class_of(group.inv(rep)) for rep in reps]
    e = _group_exponent(group)
    p = _choose_prime(group, e)

    mats = _class_matrices(group)
    eigvecs = _common_eigenvectors(mats, p)
    if len(eigvecs) != r:
        raise ArithmeticError("wrong number of eigencharacters")

    z = pow(primitive_root(p), (p - 1) // e, p)
    zpow = [pow(z, k, p) for k in range(e)]
    inv_e = pow(e, -1, p)

    rows = []
    for w in eigvecs:
        if w[0] % p == 0:
            raise ArithmeticError("eigenvector vanishes at the identity class")
        scale = pow(w[0], -1, p)
        w = [(v * scale) % p for v in w]
        s = sum(w[k] * w[inv_class[k]] * pow(sizes[k], -1, p) for k in range(r)) % p
        deg_sq = (group.order * pow(s, -1, p)) % p
        root = sqrt_mod(deg_sq, p)
        if root is None:
            raise ArithmeticError("degree squared is not a square mod p")
        degree = min(root, p - root)
        if degree * degree > group.order:
            raise ArithmeticError("implausible character degree")
        # character values mod p
        chi_mod = [(degree * w[k] * pow(sizes[k], -1, p)) % p for k in range(r)]
        # exact lift per class: eigenvalue multiplicities via inverse transform
        values = []
        for k, rep in enumerate(reps):
            mults = []
            for mth in range(e):
                acc = 0
                x = group.identity
                for a in range(e):
                    acc += chi_mod[group.class_of(x)] * zpow[(-a * mth) % e]
                    x = group.mul(x, rep)
                c = (acc * inv_e) % p
                mults.append(c)
            if sum(mults) != degree:
                raise ArithmeticError("eigenvalue multiplicities do not sum to degree")
            coeffs = [Fraction(c) for c in mults]
            values.append(CycNumber(e, coeffs))
        rows.append(ClassFunction(group, tuple(values)))

    if sum(row.degree.to_int() ** 2 for row in rows) != group.order:
        raise ArithmeticError("degree sum check failed")
    rows.sort(key=lambda row: (row.degree.to_int(), row.sort_key(e)))

    table = CharacterTable(group, e, p, tuple(rows))
    _TABLE_CACHE[id(group)] = table
    return table


def verify_orthogonality(table: CharacterTable) -> None:
    """First and second orthogonality relations, checked exactly."""
    rows = table.rows
    grp = table.group
    for i, chi in enumerate(rows):
        for j, psi in enumerate(rows):
            ip = inner_product(chi, psi)
            expected = 1 if i == j else 0
            if ip != expected:
                raise AssertionError(f"row orthogonality failed at ({i},{j}): {ip}")
    classes = grp.conjugacy_classes()
    for k in range(len(classes)):
        for l in range(len(classes)):
            total = CycNumber.from_rational(0)
            for chi in rows:
                total = total + chi.values[k] * chi.values[l].conjugate()
            expected = Fraction(grp.order, len(classes[k])) if k == l else 0
            if total != expected:
                raise AssertionError(f"column orthogonality failed at ({k},{l})")
