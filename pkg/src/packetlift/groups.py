"""Concrete finite groups on indexed element sets.

A FinGroup stores a full multiplication table over elements labelled by
sortable hashable values (ints, tuples, nested tuples).  Everything
downstream works with element indices; labels only fix a deterministic
element order.  Groups are capped at MAX_GROUP_ORDER elements.
"""

from __future__ import annotations

import itertools

from .abelian import FinAbGroup

MAX_GROUP_ORDER = 2048


class FinGroup:
    """Immutable finite group given by labels and a multiplication table."""

    __slots__ = ("labels", "index", "table", "identity", "inverse",
                 "_classes", "_class_of", "name")

    def __init__(self, labels, table, name: str = ""):
        labels = tuple(labels)
        n = len(labels)
        if n == 0:
            raise ValueError("a group needs at least the identity")
        if n > MAX_GROUP_ORDER:
            raise ValueError(f"group order {n} exceeds cap {MAX_GROUP_ORDER}")
        if len(set(labels)) != n:
            raise ValueError("duplicate element labels")
        table = tuple(tuple(row) for row in table)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("multiplication table shape mismatch")
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.table = table
        ident = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no identity")
        self.identity = ident
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if table[x][y] == ident:
                    if table[y][x] != ident:
                        raise ValueError("one-sided inverse; not a group table")
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError("element without inverse")
        self.inverse = tuple(inv)
        # associativity spot check is O(n^3); verify fully only for small n
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    tab_ab = table[a][b]
                    for c in range(n):
                        if table[tab_ab][c] != table[a][table[b][c]]:
                            raise ValueError("table is not associative")
        self._classes = None
        self._class_of = None
        self.name = name or f"group of order {n}"

    # -- basic operations ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def conj(self, t: int, x: int) -> int:
        """t x t^-1."""
        return self.table[self.table[t][x]][self.inverse[t]]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[i], -k)
        acc = self.identity
        base = i
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    def element_order(self, i: int) -> int:
        k = 1
        x = i
        while x != self.identity:
            x = self.table[x][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(i + 1, n))

    # -- conjugacy classes ----------------------------------------------------

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes as sorted index tuples, ordered by (element order, min index).

        The identity class always comes first.
        """
        if self._classes is None:
            n = self.order
            seen = [False] * n
            classes = []
            for x in range(n):
                if seen[x]:
                    continue
                cls = {self.conj(t, x) for t in range(n)}
                for y in cls:
                    seen[y] = True
                classes.append(tuple(sorted(cls)))
            classes.sort(key=lambda c: (self.element_order(c[0]), c[0]))
            self._classes = tuple(classes)
            class_of = [None] * n
            for k, cls in enumerate(self._classes):
                for y in cls:
                    class_of[y] = k
            self._class_of = tuple(class_of)
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        return self._class_of[i]

    # -- subgroups ------------------------------------------------------------

    def closure(self, gens) -> tuple[int, ...]:
        """Sorted indices of the subgroup generated by the given indices."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return tuple(sorted(seen))

    def is_subgroup(self, indices) -> bool:
        s = set(indices)
        return (self.identity in s
                and all(self.table[a][b] in s for a in s for b in s))

    def is_normal(self, indices) -> bool:
        s = set(indices)
        return all(self.conj(t, x) in s for x in s for t in range(self.order))

    def center(self) -> tuple[int, ...]:
        n = self.order
        return tuple(x for x in range(n)
                     if all(self.table[x][t] == self.table[t][x] for t in range(n)))

    def commutator_subgroup(self) -> tuple[int, ...]:
        n = self.order
        comms = set()
        for a in range(n):
            for b in range(n):
                comms.add(self.table[self.table[a][b]][
                    self.table[self.inverse[a]][self.inverse[b]]])
        return self.closure(comms)

    def subgroup(self, indices) -> tuple["FinGroup", tuple[int, ...]]:
        """Subgroup as a standalone group plus the embedding index map."""
        idx = tuple(sorted(set(indices)))
        if not self.is_subgroup(idx):
            raise ValueError("indices are not closed under multiplication")
        sub_labels = [self.labels[i] for i in idx]
        pos = {g: k for k, g in enumerate(idx)}
        table = [[pos[self.table[a][b]] for b in idx] for a in idx]
        return FinGroup(sub_labels, table, name=f"subgroup of {self.name}"), idx

    def quotient(self, normal_indices) -> tuple["FinGroup", tuple[int, ...]]:
        """Quotient by a normal subgroup.

        Returns (Q, proj) where proj[i] is the Q-index of the coset of
        element i.  Coset labels are the minimal member label.
        """
        sub = tuple(sorted(set(normal_indices)))
        if not self.is_subgroup(sub):
            raise ValueError("not a subgroup")
        if not self.is_normal(sub):
            raise ValueError("subgroup is not normal")
        n = self.order
        coset_key = [None] * n
        reps = []
        for x in range(n):
            if coset_key[x] is not None:
                continue
            members = sorted(self.table[x][h] for h in sub)
            rep = members[0]
            reps.append(rep)
            for y in members:
                coset_key[y] = rep
        reps.sort(key=lambda r: self.labels[r])
        rep_pos = {r: k for k, r in enumerate(reps)}
        proj = tuple(rep_pos[coset_key[x]] for x in range(n))
        labels = [self.labels[r] for r in reps]
        table = [[proj[self.table[a][b]] for b in reps] for a in reps]
        q = FinGroup(labels, table, name=f"{self.name} mod subgroup of order {len(sub)}")
        return q, proj

    def index_two_subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups of index 2, via characters of the abelianization."""
        comm = self.commutator_subgroup()
        q, proj = self.quotient(comm)
        ab, coords, _ = q.to_ab_group()
        out = []
        for exps in ab.elements():
            if not any(exps):
                continue
            if any((2 * c) % d for c, d in zip(exps, ab.invariant_factors)):
                continue  # character must be order 2
            kernel = tuple(x for x in range(self.order)
                           if sum(c * v * (ab.exponent // d) for c, v, d in
                                  zip(exps, coords[proj[x]], ab.invariant_factors))
                           % ab.exponent == 0)
            out.append(kernel)
        return sorted(set(out))

    # -- abelian structure ------------------------------------------------------

    def abelian_invariants(self) -> tuple[int, ...]:
        ab, _, _ = self.to_ab_group()
        return ab.invariant_factors

    def to_ab_group(self):
        """Isomorphism with an invariant-factor form group.

        Returns (A, coords, elem_of) where coords[i] is the coordinate tuple
        of element i and elem_of maps coordinate tuples back to indices.
        Raises for nonabelian groups.
        """
        if not self.is_abelian():
            raise ValueError("group is not abelian")
        basis = self._abelian_basis()  # [(index, order)] descending orders
        factors = tuple(sorted(o for _, o in basis))
        A = FinAbGroup(factors)
        gens = [g for g, _ in basis][::-1]  # ascending order to match factors
        elem_of = {}
        for combo in A.elements():
            x = self.identity
            for c, g in zip(combo, gens):
                x = self.table[x][self.power(g, c)]
            elem_of[combo] = x
        if len(set(elem_of.values())) != self.order:
            raise AssertionError("abelian basis is not a basis")
        coords = [None] * self.order
        for combo, x in elem_of.items():
            coords[x] = combo
        return A, tuple(coords), elem_of

    def _abelian_basis(self) -> list[tuple[int, int]]:
        """Basis (index, order) pairs with descending orders, preferring
        small labels; assumes the group is abelian."""
        if self.order == 1:
            return []
        best = max(range(self.order), key=lambda i: (self.element_order(i), -i))
        d = self.element_order(best)
        cyc = self.closure([best])
        if len(cyc) == self.order:
            return [(best, d)]
        q, proj = self.quotient(cyc)
        qbasis = q._abelian_basis()
        pos_in_cyc = {}
        x = self.identity
        for t in range(d):
            pos_in_cyc[x] = t
            x = self.table[x][best]
        basis = [(best, d)]
        for qg, m in qbasis:
            # lift a quotient generator and correct it to have exact order m
            h = min((i for i in range(self.order) if proj[i] == qg),
                    key=lambda i: self.labels[i])
            t = pos_in_cyc[self.power(h, m)]
            if t % m:
                raise AssertionError("lift correction is not divisible")
            h = self.table[h][self.power(self.inverse[best], t // m)]
            if self.element_order(h) != m:
                raise AssertionError("corrected lift has wrong order")
            basis.append((h, m))
        return basis

    def __repr__(self):
        return f"FinGroup({self.name!r}, order={self.order})"


# ---------------------------------------------------------------------------
# constructors


def from_elements(generators, mul, identity_label, name: str = "") -> FinGroup:
    """Group generated by labelled elements under an explicit product."""
    seen = {identity_label}
    frontier = [identity_label]
    gens = list(generators)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                if len(seen) >= MAX_GROUP_ORDER:
                    raise ValueError("closure exceeds group order cap")
                seen.add(y)
                frontier.append(y)
    labels = sorted(seen)
    pos = {lab: i for i, lab in enumerate(labels)}
    table = [[pos[mul(a, b)] for b in labels] for a in labels]
    return FinGroup(labels, table, name=name)


def _perm_mul(p, q):
    """(p then q read right-to-left): composite sends i to p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def from_permutations(gens, name: str = "") -> FinGroup:
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("need at least one permutation")
    n = len(gens[0])
    ident = tuple(range(n))
    return from_elements(gens, _perm_mul, ident, name=name)


def cyclic(n: int) -> FinGroup:
    if n < 1:
        raise ValueError("order must be positive")
    labels = list(range(n))
    table = [[(a + b) % n for b in labels] for a in labels]
    return FinGroup(labels, table, name=f"C{n}")


def dihedral(n: int) -> FinGroup:
    """Dihedral group of order 2n acting on n points (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral constructor needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return from_permutations([rot, ref], name=f"D{n} (order {2 * n})")


def symmetric(n: int) -> FinGroup:
    labels = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(labels)}
    table = [[pos[_perm_mul(a, b)] for b in labels] for a in labels]
    return FinGroup(labels, table, name=f"S{n}")


def _perm_sign(p) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating(n: int) -> FinGroup:
    labels = sorted(p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1)
    pos = {p: i for i, p in enumerate(labels)}
    table = [[pos[_perm_mul(a, b)] for b in labels] for a in labels]
    return FinGroup(labels, table, name=f"A{n}")


def klein_four_in_s4() -> tuple[FinGroup, tuple[int, ...]]:
    """The normal Klein four subgroup of S4, as (S4, indices)."""
    s4 = symmetric(4)
    double_transpositions = [(1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    gens = [s4.index[p] for p in double_transpositions]
    return s4, s4.closure(gens)


_QUAT_AXIS_MUL = {
    # unit quaternion products on axes 1,i,j,k -> (axis, sign)
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}


def quaternion8() -> FinGroup:
    """Quaternion group; labels (axis, sign_bit) with axes 1,i,j,k."""

    def mul(x, y):
        axis, sgn = _QUAT_AXIS_MUL[(x[0], y[0])]
        bit = (x[1] + y[1] + (0 if sgn == 1 else 1)) % 2
        return (axis, bit)

    return from_elements([(1, 0), (2, 0)], mul, (0, 0), name="Q8")


def _signed_perm_mul(a, b):
    """Signed permutation matrices as tuples of rows of -1/0/1 entries."""
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _kron(a, b):
    na, nb = len(a), len(b)
    return tuple(tuple(a[i // nb][j // nb] * b[i % nb][j % nb]
                       for j in range(na * nb)) for i in range(na * nb))


_X2 = ((0, 1), (1, 0))
_Z2 = ((1, 0), (0, -1))
_I2 = ((1, 0), (0, 1))


def extraspecial_32_plus() -> FinGroup:
    """Extraspecial group of order 32 and plus type, as 4x4 signed
    permutation matrices generated by two commuting anticommuting pairs."""
    gens = [_kron(_X2, _I2), _kron(_Z2, _I2), _kron(_I2, _X2), _kron(_I2, _Z2)]
    ident = _kron(_I2, _I2)
    g = from_elements(gens, _signed_perm_mul, ident, name="extraspecial 32+")
    if g.order != 32:
        raise AssertionError("unexpected closure size")
    return g


def direct_product(a: FinGroup, b: FinGroup, name: str = "") -> FinGroup:
    labels = sorted((la, lb) for la in a.labels for lb in b.labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    table = [[pos[(a.labels[a.table[a.index[x[0]]][a.index[y[0]]]],
                   b.labels[b.table[b.index[x[1]]][b.index[y[1]]]])]
              for y in labels] for x in labels]
    return FinGroup(labels, table, name=name or f"{a.name} x {b.name}")
