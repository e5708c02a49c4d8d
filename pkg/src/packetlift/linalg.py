"""Dense exact linear algebra, generic over the scalar field.

Entries are Fractions or cyclotomic numbers (anything with exact +,-,*,/
and truthiness testing zero).  Callers normalize integer inputs to
Fractions first; these routines never introduce floats.
"""

from __future__ import annotations


def transpose(m):
    return [[m[i][j] for i in range(len(m))] for j in range(len(m[0]))]


def mat_mul(a, b):
    n, mid, cols = len(a), len(b), len(b[0])
    if len(a[0]) != mid:
        raise ValueError("matrix shape mismatch")
    return [[sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(cols)]
            for i in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_mul(c, m):
    return [[c * v for v in row] for row in m]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def trace(m):
    return sum(m[i][i] for i in range(len(m)))


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [v / inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def nullspace(matrix):
    """Basis of the right nullspace of a (not necessarily square) matrix."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def det(matrix):
    """Determinant by fraction-aware Gaussian elimination."""
    n = len(matrix)
    m = [list(r) for r in matrix]
    sign = 1
    result = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0 * result
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result = result * m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return sign * result


def solve_in_columns(columns, target):
    """Coefficients writing target as a combination of the given column
    vectors, or None if it is outside their span."""
    ncols = len(columns)
    aug = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    red, pivots = rref(aug)
    if any(c >= ncols for c in pivots):
        return None
    coeffs = [0] * ncols
    for r, pc in enumerate(pivots):
        coeffs[pc] = red[r][ncols]
    return coeffs
