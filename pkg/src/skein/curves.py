"""Curve coordinates, unimodular matrices and pair reduction.

A multicurve is a pair ``(d, n)``: ``2d`` points on the y-axis, ``2|n|`` on
the x-axis, written as the fraction ``n/d``.  Matrices act on the column
``(n, d)`` of a fraction, so ``s1`` shifts the slope by one and fixes
``1/0`` while ``s2`` fixes ``0/1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

__all__ = [
    "Curve",
    "EMPTY",
    "UniMatrix",
    "ReducedPair",
    "S1",
    "S2",
    "IDENTITY",
    "normalize",
    "pair_det",
    "farey_parents",
    "reduce_pair",
    "ext_gcd",
]


class Curve(NamedTuple):
    d: int
    n: int

    @classmethod
    def of(cls, d: int, n: int) -> Curve:
        return normalize(d, n)

    @property
    def multiplicity(self) -> int:
        return gcd(self.d, self.n)

    @property
    def slope(self) -> Curve:
        r = gcd(self.d, self.n)
        if r == 0:
            return self
        return Curve(self.d // r, self.n // r)

    def is_empty(self) -> bool:
        return self.d == 0 and self.n == 0

    def is_primitive(self) -> bool:
        return gcd(self.d, self.n) == 1

    def scaled(self, k: int) -> Curve:
        return Curve(self.d * k, self.n * k)

    def __str__(self):
        return f"({self.d},{self.n})"


EMPTY = Curve(0, 0)


def normalize(d: int, n: int) -> Curve:
    """Canonical representative: ``d >= 0``, and ``n >= 0`` when ``d == 0``."""
    if d < 0 or (d == 0 and n < 0):
        return Curve(-d, -n)
    return Curve(d, n)


def pair_det(a: Curve, b: Curve) -> int:
    """``d_a n_b - d_b n_a``; the intersection number is twice its absolute value."""
    return a[0] * b[1] - b[0] * a[1]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u a + v b = g = gcd(a, b) >= 0``."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        a, u0, v0 = -a, -u0, -v0
    return a, u0, v0


@dataclass(frozen=True)
class UniMatrix:
    """``[[m11, m12], [m21, m22]]`` acting on fraction columns ``(n, d)``."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.det() not in (1, -1):
            raise ValueError(f"matrix {self.rows()} is not unimodular")

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def __matmul__(self, other: UniMatrix) -> UniMatrix:
        return UniMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse(self) -> UniMatrix:
        e = self.det()
        return UniMatrix(e * self.m22, -e * self.m12, -e * self.m21, e * self.m11)

    def __pow__(self, k: int) -> UniMatrix:
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def act_vector(self, d: int, n: int) -> tuple[int, int]:
        """Image of the raw vector ``(d, n)`` (no sign normalization)."""
        return (self.m21 * n + self.m22 * d, self.m11 * n + self.m12 * d)

    def act(self, c: Curve) -> Curve:
        return normalize(*self.act_vector(c.d, c.n))

    def act_mod2(self, label: tuple[int, int]) -> tuple[int, int]:
        d, n = self.act_vector(*label)
        return (d % 2, n % 2)

    def is_identity(self) -> bool:
        return (self.m11, self.m12, self.m21, self.m22) in ((1, 0, 0, 1), (-1, 0, 0, -1))


IDENTITY = UniMatrix(1, 0, 0, 1)
S1 = UniMatrix(1, 1, 0, 1)
S2 = UniMatrix(1, 0, 1, 1)


def farey_parents(c: Curve) -> tuple[Curve, Curve]:
    """The Farey neighbours whose mediant is ``c``.

    Requires ``gcd(d, n) = 1``, ``d >= 2`` and ``0 <= n < d``.  The lower
    slope comes first, except that the pair is swapped when needed so the
    second parent has denominator at least 2 whenever ``d >= 3``; the Farey
    recursion multiplies by the first parent last and relies on it being
    the smaller one.
    """
    d, n = c
    if d < 2 or not 0 <= n < d or gcd(d, n) != 1:
        raise ValueError(f"farey_parents needs a reduced fraction with d >= 2 and 0 <= n < d, got {c}")
    # lower neighbour n1/d1 < n/d: n*d1 - d*n1 = 1, i.e. d1 = n^-1 (mod d)
    _, u, _ = ext_gcd(n, d)
    d1 = u % d
    n1 = (n * d1 - 1) // d
    left = Curve(d1, n1)
    right = Curve(d - d1, n - n1)
    if right.d >= 2 or d < 3:
        return left, right
    return right, left


@dataclass(frozen=True)
class ReducedPair:
    first: Curve
    second: Curve
    transform: UniMatrix


def reduce_pair(a: Curve, b: Curve) -> ReducedPair:
    """Move ``b`` to ``(0, k)`` and ``a`` into ``0 <= n < d`` by a determinant-one map.

    The returned transform ``M`` satisfies ``M.act(a) == first`` and
    ``M.act(b) == second``.
    """
    if b.is_empty():
        return ReducedPair(a, b, IDENTITY)
    k = b.multiplicity
    db, nb = b.d // k, b.n // k
    _, u, v = ext_gcd(nb, db)
    m = UniMatrix(u, v, -db, nb)
    first = m.act(a)
    if first.d >= 1:
        shift = -(first.n // first.d)
        if shift:
            m = (S1 ** shift) @ m
            first = m.act(a)
    second = m.act(b)
    assert second == Curve(0, k), (b, second)
    return ReducedPair(first, second, m)
