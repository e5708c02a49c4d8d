"""Exact arithmetic in cyclotomic fields.

A :class:`CycNumber` of order ``e`` is a rational coordinate vector over the
power basis ``1, z, z**2, ..., z**(e-1)`` of the ``e``-th cyclotomic field,
kept in the canonical form obtained by reducing modulo the ``e``-th
cyclotomic polynomial.  Canonical form makes equality, hashing and
lexicographic ordering of value vectors well defined; coordinates at index
``>= phi(e)`` are always zero.

Binary operations between numbers of different orders lift both operands to
the least common multiple order first.  Hashes are representation sensitive
across orders (``zeta(3,1)`` and its order-6 image hash differently), so
dictionary keys must share a common order; all in-package uses do.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    out = list(a)
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv_lead
        if c:
            shift = len(a) - len(b)
            q[shift] = c
            for i, y in enumerate(b):
                a[shift + i] -= c * y
        a.pop()  # leading coefficient is now exactly zero
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the e-th cyclotomic polynomial."""
    if e < 1:
        raise ValueError("order must be positive")
    # x^e - 1 = prod_{d | e} Phi_d
    num = [-_ONE] + [_ZERO] * (e - 1) + [_ONE]
    den = [_ONE]
    for d in range(1, e):
        if e % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    q, r = _poly_divmod(num, den)
    if r:
        raise AssertionError("cyclotomic division left a remainder")
    return tuple(q)


def _reduce(coeffs: list[Fraction], e: int) -> tuple[Fraction, ...]:
    """Fold x^e = 1 and reduce modulo Phi_e; return a length-e tuple."""
    folded = [_ZERO] * e
    for i, c in enumerate(coeffs):
        if c:
            folded[i % e] += c
    _, rem = _poly_divmod(folded, list(cyclotomic_polynomial(e)))
    rem = list(rem) + [_ZERO] * (e - len(rem))
    return tuple(rem)


class CycNumber:
    """An element of the order-e cyclotomic field, in canonical coordinates."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce([Fraction(c) for c in coeffs], order))

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(value, order: int = 1) -> "CycNumber":
        return CycNumber(order, [Fraction(value)])

    @staticmethod
    def zeta(order: int, power: int = 1) -> "CycNumber":
        coeffs = [_ZERO] * order
        coeffs[power % order] = _ONE
        return CycNumber(order, coeffs)

    # -- order coercion ----------------------------------------------------

    def lift(self, order: int) -> "CycNumber":
        """Rewrite over the order-`order` basis; requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        k = order // self.order
        coeffs = [_ZERO] * order
        for i, c in enumerate(self.coeffs):
            if c:
                coeffs[i * k] = c
        return CycNumber(order, coeffs)

    @staticmethod
    def _common(a: "CycNumber", b: "CycNumber") -> tuple["CycNumber", "CycNumber"]:
        if a.order == b.order:
            return a, b
        e = lcm(a.order, b.order)
        return a.lift(e), b.lift(e)

    @staticmethod
    def _coerce(value) -> "CycNumber":
        if isinstance(value, CycNumber):
            return value
        return CycNumber.from_rational(value)

    # -- field operations ---------------------------------------------------

    def __add__(self, other) -> "CycNumber":
        a, b = CycNumber._common(self, CycNumber._coerce(other))
        return CycNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> "CycNumber":
        return self + (-CycNumber._coerce(other))

    def __rsub__(self, other) -> "CycNumber":
        return CycNumber._coerce(other) - self

    def __mul__(self, other) -> "CycNumber":
        a, b = CycNumber._common(self, CycNumber._coerce(other))
        prod = [_ZERO] * (2 * a.order)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return CycNumber(a.order, prod)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycNumber":
        other = CycNumber._coerce(other)
        if other.is_rational():
            q = other.to_fraction()
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CycNumber(self.order, [c / q for c in self.coeffs])
        a, b = CycNumber._common(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return CycNumber._coerce(other).lift(self.order) / self

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_e."""
        a = _trim(list(self.coeffs))
        if not a:
            raise ZeroDivisionError("inverse of zero")
        phi = list(cyclotomic_polynomial(self.order))
        # track s with s*a = r (mod phi); terminate with r constant since Phi_e is irreducible
        r0, r1 = a, phi
        s0, s1 = [_ONE], []
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise AssertionError("gcd with the cyclotomic polynomial is not a unit")
        unit = r0[0]
        return CycNumber(self.order, [c / unit for c in s0])

    def conjugate(self) -> "CycNumber":
        """Complex conjugation: z^k -> z^(e-k)."""
        e = self.order
        coeffs = [_ZERO] * e
        for i, c in enumerate(self.coeffs):
            if c:
                coeffs[(e - i) % e] += c
        return CycNumber(e, coeffs)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_int(self) -> int:
        q = self.to_fraction()
        if q.denominator != 1:
            raise ValueError(f"{self!r} is not an integer")
        return q.numerator

    def sort_key(self, order: int | None = None) -> tuple[Fraction, ...]:
        """Coordinates at a fixed order, for deterministic lexicographic sorting."""
        return self.lift(order).coeffs if order else self.coeffs

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = CycNumber._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{i}" if i else f"{c}")
        return "Cyc(" + " + ".join(terms) + ")"


CYC_ZERO = CycNumber(1, [0])
CYC_ONE = CycNumber(1, [1])
