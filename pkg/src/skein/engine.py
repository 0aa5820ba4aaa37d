"""Products of multicurves in the skein algebra of the thickened four-holed sphere.

The engine multiplies two multicurves by

1. answering determinant 0, +-1 and +-2 (both primitive) products directly;
2. otherwise moving the pair to ``(d, n) * (0, k)`` with ``0 <= n < d`` by a
   determinant-one matrix, computing that product, and moving it back;
3. computing ``(d, n) * (0, k)`` by peeling one vertical copy (``k > 1``),
   peeling one copy of the slope (``gcd(d, n) > 1``), a closed formula
   (``n = 1``), or the Farey recursion through the two parents of ``n/d``.

Every recursive product must have strictly smaller ``|det|`` than the one
that spawned it; a violation raises :class:`RecursionContractError`.
All results are memoized in a :class:`ProductCache`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Union

from .chebyshev import power_to_T
from .coeffs import K0ClosureError, K0Poly, LaurentA, quantum_int
from .curves import EMPTY, Curve, farey_parents, normalize, pair_det, reduce_pair
from .element import DecoratedCurve, SkeinElement, decorated
from .mcg import apply_matrix
from .torus import TorusElement

__all__ = [
    "Engine",
    "ProductCache",
    "RecursionContractError",
    "SpecializationError",
    "K0ClosureError",
    "default_engine",
    "mul_det0",
    "mul_det1",
    "mul_det2",
    "closed_m0",
    "closed_n1",
    "specialize_torus",
    "as_element",
    "mul_basis",
    "mul",
]

Factor = Union[SkeinElement, DecoratedCurve, Curve, tuple, int, K0Poly, LaurentA]


class RecursionContractError(AssertionError):
    """A recursive product failed to decrease |det|."""


class SpecializationError(ValueError):
    """An odd power of A survived the torus specialization."""


def _A(exp: int, coeff: int = 1) -> K0Poly:
    return K0Poly.A(exp, coeff)


_Y = K0Poly.var("y")


# --------------------------------------------------------------------------
# base products


def mul_det0(a: Curve, b: Curve) -> SkeinElement:
    """Disjoint union of parallel multicurves."""
    a, b = normalize(*a), normalize(*b)
    if pair_det(a, b):
        raise ValueError(f"mul_det0 needs determinant 0, got {pair_det(a, b)} for {a}*{b}")
    if a.is_empty() or b.is_empty():
        return SkeinElement({b if a.is_empty() else a: 1})
    # parallel unoriented curves: add with matching orientation
    if a.d * b.d + a.n * b.n < 0:
        b = Curve(-b.d, -b.n)
    return SkeinElement({normalize(a.d + b.d, a.n + b.n): 1})


def mul_det1(a: Curve, b: Curve) -> SkeinElement:
    """Determinant +-1: three terms, with ``A -> A^-1`` for determinant -1."""
    e = pair_det(a, b)
    if e not in (1, -1):
        raise ValueError(f"mul_det1 needs determinant +-1, got {e} for {a}*{b}")
    s = (a.d + b.d, a.n + b.n)
    return SkeinElement(
        {
            normalize(*s): _A(2 * e),
            normalize(a.d - b.d, a.n - b.n): _A(-2 * e),
            EMPTY: K0Poly.R(*s),
        }
    )


def mul_det2(a: Curve, b: Curve) -> SkeinElement:
    """Determinant +-2 base products.

    Both primitive: the five-term product ``a * b``.  If one factor has
    multiplicity 2, that factor is read as T-decorated, i.e. the result is
    ``a_T * b`` or ``a * b_T``.
    """
    a, b = normalize(*a), normalize(*b)
    e = pair_det(a, b)
    if e not in (2, -2):
        raise ValueError(f"mul_det2 needs determinant +-2, got {e} for {a}*{b}")
    ra, rb = a.multiplicity, b.multiplicity
    sign = e // 2
    s = (a.d + b.d, a.n + b.n)
    t = (a.d - b.d, a.n - b.n)
    if ra == 1 and rb == 1:
        hs = (s[0] // 2, s[1] // 2)
        ht = (t[0] // 2, t[1] // 2)
        out = decorated(normalize(*s), "T", _A(4 * sign))
        out = out + decorated(normalize(*t), "T", _A(-4 * sign))
        out = out + SkeinElement(
            {
                EMPTY: _Y,
                normalize(*hs): _A(2 * sign) * K0Poly.R(*hs),
            }
        )
        return out + SkeinElement({normalize(*ht): _A(-2 * sign) * K0Poly.R(*ht)})
    both_sides = _A(2) + _A(-2)
    if ra == 2 and rb == 1:
        h = (a.d // 2, a.n // 2)
        extra = {normalize(*h): K0Poly.R(h[0] + b.d, h[1] + b.n), EMPTY: both_sides * K0Poly.R(b.d, b.n)}
    elif ra == 1 and rb == 2:
        h = (b.d // 2, b.n // 2)
        extra = {normalize(*h): K0Poly.R(a.d + h[0], a.n + h[1]), EMPTY: both_sides * K0Poly.R(a.d, a.n)}
    else:
        raise ValueError(f"mul_det2 needs multiplicities in {{1,2}} with at most one 2, got {ra}, {rb}")
    return SkeinElement({normalize(*s): _A(4 * sign), normalize(*t): _A(-4 * sign)}) + SkeinElement(extra)


def closed_m0(m: int) -> SkeinElement:
    """``(m,0)_T * (0,1)`` in closed form."""
    if m < 1:
        raise ValueError(f"closed_m0 needs m >= 1, got {m}")
    out = SkeinElement({Curve(m, 1): _A(2 * m), Curve(m, -1): _A(-2 * m)})
    out = out + decorated(Curve(m - 1, 0), "S", K0Poly.R(1, 1))
    for i in range(1, m):
        weight = (_A(2 * i) + _A(-2 * i)) * K0Poly.R(i + 1, 1)
        out = out + decorated(Curve(m - 1 - i, 0), "S", weight)
    return out


def _alpha(i: int) -> K0Poly:
    r01, r10, r11 = K0Poly.var("R01"), K0Poly.var("R10"), K0Poly.var("R11")
    if i == 1:
        return r10
    if i == 2:
        return _Y
    if i == 3:
        return r01 * r11 + r10
    if i % 2 == 0:
        return (r01 * r01 + r11 * r11) * ((i - 2) // 2)
    return r01 * r11 * (i - 2)


def _beta(i: int) -> SkeinElement:
    out = SkeinElement.zero()
    for j in range(i // 2 + 1):
        out = out + decorated(Curve(i - 2 * j, 0), "S", _A(-2 * i + 8 * j))
    return out


def closed_n1(n: int) -> SkeinElement:
    """``(n,1) * (0,1)`` in closed form.

    The ``(i,1)`` coefficient is ``A^2 [n_i]_{A^4} R_{(n+i) mod 2, 1}`` and
    the central part is ``sum_i alpha_{n-i} beta_i``.
    """
    if n < 0:
        raise ValueError(f"closed_n1 needs n >= 0, got {n}")
    out = decorated(Curve(n, 2), "T", _A(2 * n)) + decorated(Curve(n, 0), "T", _A(-2 * n))
    for i in range(n):
        out = out + _beta(i).scale(_alpha(n - i))
    for i in range(1, n):
        weight = _A(2) * quantum_int(min(i, n - i)) * K0Poly.R(n + i, 1)
        out = out + SkeinElement({Curve(i, 1): weight})
    return out


# --------------------------------------------------------------------------
# cache


@dataclass
class ProductCache:
    """Memo table ``(a, b) -> a * b`` plus instrumentation counters.

    Inserts are idempotent: the first value stored for a key wins and is
    never replaced.
    """

    entries: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0
    calls: int = 0
    max_depth: int = 0

    def get(self, key):
        value = self.entries.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key, value: SkeinElement) -> SkeinElement:
        return self.entries.setdefault(key, value)

    def merge(self, other: dict) -> int:
        """Add entries not already present; returns how many were added."""
        added = 0
        for k, v in other.items():
            if k not in self.entries:
                self.entries[k] = v
                added += 1
        return added

    def reset_counters(self) -> None:
        self.hits = self.misses = self.calls = self.max_depth = 0

    def counters(self) -> dict[str, int]:
        return {
            "calls": self.calls,
            "cache_hits": self.hits,
            "cache_misses": self.misses,
            "max_depth": self.max_depth,
            "entries": len(self.entries),
        }

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries


# --------------------------------------------------------------------------
# engine


class Engine:
    """Memoized product of four-holed-sphere skein elements.

    ``use_closed_forms`` lets the engine shortcut ``(n,1)*(0,1)`` and
    ``(m,0)*(0,1)`` through the closed formulas; switch it off to force the
    generic recursion (used to cross-check those formulas).
    """

    def __init__(self, cache: ProductCache | None = None, *, use_closed_forms: bool = True):
        self.cache = cache if cache is not None else ProductCache()
        self.use_closed_forms = use_closed_forms
        self._depth = threading.local()

    # public ---------------------------------------------------------------
    def mul_basis(self, a: Curve | tuple, b: Curve | tuple, _bound: int | None = None) -> SkeinElement:
        a, b = normalize(*a), normalize(*b)
        cache = self.cache
        cache.calls += 1
        if a.is_empty() or b.is_empty():
            return SkeinElement({b if a.is_empty() else a: 1})
        det = pair_det(a, b)
        if _bound is not None and abs(det) >= _bound:
            raise RecursionContractError(f"{a}*{b} has |det| {abs(det)}, not below {_bound}")
        if det == 0:
            return mul_det0(a, b)
        key = (a, b)
        hit = cache.get(key)
        if hit is not None:
            return hit
        depth = getattr(self._depth, "v", 0) + 1
        self._depth.v = depth
        if depth > cache.max_depth:
            cache.max_depth = depth
        try:
            res = self._compute(a, b, det)
        finally:
            self._depth.v = depth - 1
        return cache.put(key, res)

    def mul(self, x: Factor, y: Factor) -> SkeinElement:
        """Bilinear product of two elements (decorated curves are expanded first)."""
        x, y = as_element(x), as_element(y)
        acc: dict = {}
        for a, ka in x.terms.items():
            for b, kb in y.terms.items():
                self.mul_basis(a, b).add_into(acc, (ka * kb).flat)
        return SkeinElement.from_acc(acc)

    def product(self, *factors: Factor) -> SkeinElement:
        """Left-to-right product of any number of factors."""
        out = SkeinElement.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    # internals ------------------------------------------------------------
    def _compute(self, a: Curve, b: Curve, det: int) -> SkeinElement:
        if abs(det) == 1:
            return mul_det1(a, b)
        if abs(det) == 2 and a.is_primitive() and b.is_primitive():
            return mul_det2(a, b)
        rp = reduce_pair(a, b)
        first, k = rp.first, rp.second.n
        if rp.transform.is_identity():
            return self._reduced(first, k)
        reduced = self.cache.get((first, rp.second))
        if reduced is None:
            reduced = self.cache.put((first, rp.second), self._reduced(first, k))
        return apply_matrix(reduced, rp.transform.inverse())

    def _reduced(self, c: Curve, k: int) -> SkeinElement:
        """``c * (0,k)`` with ``0 <= c.n < c.d``; |det| is ``c.d * k``."""
        bound = c.d * k
        vertical = Curve(0, 1)
        acc: dict = {}
        if k > 1:
            head = self.mul_basis(c, Curve(0, k - 1), bound)
            for q, coeff in head.terms.items():
                self.mul_basis(q, vertical, bound).add_into(acc, coeff.flat)
            return SkeinElement.from_acc(acc)
        r = c.multiplicity
        if r > 1:
            x = c.slope
            if self.use_closed_forms and c.n == 0:
                for i, coeff in power_to_T(r).items():
                    part = closed_m0(i) if i else SkeinElement({vertical: 1})
                    part.add_into(acc, K0Poly.const(coeff).flat)
                return SkeinElement.from_acc(acc)
            head = self.mul_basis(x.scaled(r - 1), vertical, bound)
            for q, coeff in head.terms.items():
                self.mul_basis(x, q, bound).add_into(acc, coeff.flat)
            return SkeinElement.from_acc(acc)
        if c.d <= 2:
            # determinants 1 and 2 are answered before reduction
            raise RecursionContractError(f"unexpected base pair {c}*(0,1)")
        if self.use_closed_forms and c.n == 1:
            return closed_n1(c.d)
        return self._farey(c, bound)

    def _farey(self, c: Curve, bound: int) -> SkeinElement:
        p1, p2 = farey_parents(c)
        e = pair_det(p1, p2)
        vertical = Curve(0, 1)
        acc: dict = {}
        inner = self.mul_basis(p2, vertical, bound)
        lead = _A(-2 * e)
        for q, coeff in inner.terms.items():
            self.mul_basis(p1, q, bound).add_into(acc, (coeff * lead).flat)
        diff = normalize(p1.d - p2.d, p1.n - p2.n)
        self.mul_basis(diff, vertical, bound).add_into(acc, _A(-4 * e, -1).flat)
        SkeinElement({vertical: K0Poly.R(c.d, c.n)}).add_into(acc, _A(-2 * e, -1).flat)
        return SkeinElement.from_acc(acc)


def as_element(x: Factor) -> SkeinElement:
    if isinstance(x, SkeinElement):
        return x
    if isinstance(x, DecoratedCurve):
        return x.expand()
    if isinstance(x, (int, K0Poly, LaurentA)):
        return SkeinElement.scalar(x)
    if isinstance(x, tuple) and len(x) == 2:
        return SkeinElement({normalize(*x): 1})
    raise TypeError(f"cannot use {x!r} as a skein element")


_default: Engine | None = None
_default_lock = threading.Lock()


def default_engine() -> Engine:
    global _default
    with _default_lock:
        if _default is None:
            _default = Engine()
        return _default


def mul_basis(a, b) -> SkeinElement:
    return default_engine().mul_basis(a, b)


def mul(x: Factor, y: Factor) -> SkeinElement:
    return default_engine().mul(x, y)


def specialize_torus(x: SkeinElement) -> TorusElement:
    """Drop central terms and send ``A^2 -> A``.

    Raises :class:`SpecializationError` if an odd power of ``A`` survives.
    """
    out = {}
    for c, k in x.terms.items():
        lp = k.laurent_part()
        if lp.is_zero():
            continue
        odd = [e for e in lp.terms if e % 2]
        if odd:
            raise SpecializationError(f"odd A-exponents {odd} on {c}")
        out[c] = LaurentA({e // 2: v for e, v in lp.terms.items()})
    return TorusElement(out, basis="mono")


def products(engine: Engine, pairs: Iterable[tuple[Curve, Curve]]) -> list[SkeinElement]:
    return [engine.mul_basis(a, b) for a, b in pairs]
