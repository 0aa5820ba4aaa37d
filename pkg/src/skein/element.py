"""Skein elements of the thickened four-holed sphere.

A :class:`SkeinElement` is a finite combination of multicurves with
:class:`~skein.coeffs.K0Poly` coefficients.  The multicurve basis is the only
stored form; Chebyshev-decorated views are produced by :func:`to_basis` and
read back by :func:`from_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .chebyshev import power_to_S, power_to_T, s_expand, t_expand
from .coeffs import K0Poly, LaurentA
from .curves import EMPTY, Curve, normalize

__all__ = [
    "SkeinElement",
    "DecoratedCurve",
    "to_basis",
    "from_basis",
    "to_T_basis",
]

Coeff = Union[int, LaurentA, K0Poly]
FlatAcc = dict  # dict[Curve, dict[tuple, int]]


def _k0(c: Coeff) -> K0Poly:
    if isinstance(c, K0Poly):
        return c
    if isinstance(c, int):
        return K0Poly.const(c)
    if isinstance(c, LaurentA):
        return K0Poly.from_laurent(c)
    raise TypeError(f"not a K0 coefficient: {c!r}")


class SkeinElement:
    """Immutable ``{Curve: K0Poly}`` with no zero coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Curve, Coeff] | None = None):
        out: dict[Curve, K0Poly] = {}
        for c, k in (terms or {}).items():
            c = normalize(*c)
            k = _k0(k)
            if c in out:
                k = out[c] + k
            if k:
                out[c] = k
            else:
                out.pop(c, None)
        self._t = out
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Curve, K0Poly]) -> SkeinElement:
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    @classmethod
    def from_acc(cls, acc: FlatAcc) -> SkeinElement:
        """Build from an accumulator ``{Curve: {flat key: int}}``."""
        out = {}
        for c, flat in acc.items():
            flat = {k: v for k, v in flat.items() if v}
            if flat:
                out[c] = K0Poly(flat, _trusted=True)
        return cls._wrap(out)

    @classmethod
    def zero(cls) -> SkeinElement:
        return cls._wrap({})

    @classmethod
    def one(cls) -> SkeinElement:
        return cls._wrap({EMPTY: K0Poly.one()})

    @classmethod
    def curve(cls, d: int, n: int, coeff: Coeff = 1) -> SkeinElement:
        return cls({normalize(d, n): coeff})

    @classmethod
    def scalar(cls, coeff: Coeff) -> SkeinElement:
        return cls({EMPTY: coeff})

    # access -------------------------------------------------------------
    @property
    def terms(self) -> dict[Curve, K0Poly]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def curves(self) -> list[Curve]:
        return sorted(self._t)

    def coeff(self, c: Curve | tuple[int, int]) -> K0Poly:
        return self._t.get(normalize(*c), K0Poly.zero())

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def __iter__(self):
        return iter(self.items())

    def add_into(self, acc: FlatAcc, scalar: Mapping[tuple, int] | None = None) -> None:
        """Accumulate ``scalar * self`` into ``acc`` in place."""
        for c, k in self._t.items():
            slot = acc.get(c)
            if slot is None:
                slot = acc[c] = {}
            get = slot.get
            if scalar is None:
                for key, v in k.flat.items():
                    slot[key] = get(key, 0) + v
                continue
            for (a0, a1, a2, a3, a4), v in k.flat.items():
                for (b0, b1, b2, b3, b4), w in scalar.items():
                    key = (a0 + b0, a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                    slot[key] = get(key, 0) + v * w

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SkeinElement):
            other = _as_element(other)
            if other is NotImplemented:
                return NotImplemented
        out = dict(self._t)
        for c, k in other._t.items():
            s = out[c] + k if c in out else k
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return SkeinElement._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return SkeinElement._wrap({c: -k for c, k in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, SkeinElement):
            other = _as_element(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coeff: Coeff) -> SkeinElement:
        k = _k0(coeff)
        if not k:
            return SkeinElement.zero()
        out = {}
        for c, v in self._t.items():
            p = v * k
            if p:
                out[c] = p
        return SkeinElement._wrap(out)

    def __mul__(self, other):
        """Scalar multiplication, or the skein product via the default engine."""
        if isinstance(other, SkeinElement):
            from .engine import default_engine

            return default_engine().mul(self, other)
        if isinstance(other, (int, LaurentA, K0Poly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentA, K0Poly)):
            return self.scale(other)
        return NotImplemented

    def invert_A(self) -> SkeinElement:
        return SkeinElement._wrap({c: k.invert_A() for c, k in self._t.items()})

    def map_coeffs(self, f) -> SkeinElement:
        return SkeinElement({c: f(k) for c, k in self._t.items()})

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SkeinElement):
            return self._t == other._t
        other = _as_element(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def __repr__(self):
        return f"SkeinElement({self})"

    def __str__(self):
        from .serialize import format_element

        return format_element(self)


def _as_element(x):
    if isinstance(x, (int, LaurentA, K0Poly)):
        return SkeinElement.scalar(x)
    return NotImplemented


@dataclass(frozen=True)
class DecoratedCurve:
    """A curve with a Chebyshev decoration applied at its slope.

    ``T`` and ``S`` substitute the primitive curve into ``T_r`` / ``S_r``
    where ``r`` is the multiplicity; ``plain`` is the multicurve itself.
    """

    curve: Curve
    decoration: str = "plain"

    def __post_init__(self):
        if self.decoration not in ("plain", "T", "S"):
            raise ValueError(f"unknown decoration {self.decoration!r}")
        object.__setattr__(self, "curve", normalize(*self.curve))

    def expand(self) -> SkeinElement:
        return decorated(self.curve, self.decoration)


def decorated(c: Curve, decoration: str, coeff: Coeff = 1) -> SkeinElement:
    """Multicurve-basis expansion of ``coeff * (c)_decoration``."""
    c = normalize(*c)
    if decoration == "plain":
        return SkeinElement({c: coeff})
    r = c.multiplicity
    x = c.slope
    poly = t_expand(r) if decoration == "T" else s_expand(r)
    k = _k0(coeff)
    return SkeinElement({x.scaled(j): k * a for j, a in enumerate(poly) if a})


def to_basis(x: SkeinElement, kind: str = "T") -> dict[Curve, K0Poly]:
    """Rewrite ``x`` in the ``T``- or ``S``-decorated basis.

    The result maps a nonempty curve to the coefficient of its decorated
    version; key ``(0,0)`` holds the plain constant.
    """
    if kind == "mono":
        return x.terms
    if kind not in ("T", "S"):
        raise ValueError(f"unknown basis {kind!r}")
    to_poly = power_to_T if kind == "T" else power_to_S
    acc: dict[Curve, K0Poly] = {}
    for c, k in x.items():
        if c.is_empty():
            parts = {0: 1}
            slope = c
        else:
            parts = to_poly(c.multiplicity)
            slope = c.slope
        for i, a in parts.items():
            key = slope.scaled(i)
            acc[key] = acc.get(key, K0Poly.zero()) + k * a
    return {c: k for c, k in acc.items() if k}


def from_basis(view: Mapping[Curve, Coeff], kind: str = "T") -> SkeinElement:
    """Inverse of :func:`to_basis`."""
    if kind == "mono":
        return SkeinElement(view)
    out = SkeinElement.zero()
    for c, k in view.items():
        c = normalize(*c)
        if c.is_empty():
            out = out + SkeinElement.scalar(k)
        else:
            out = out + decorated(c, kind, k)
    return out


def to_T_basis(x: SkeinElement, kind: str = "T") -> dict[Curve, K0Poly]:
    return to_basis(x, kind)


def combine(parts: Iterable[tuple[Coeff, SkeinElement]]) -> SkeinElement:
    acc: FlatAcc = {}
    for coeff, el in parts:
        el.add_into(acc, _k0(coeff).flat)
    return SkeinElement.from_acc(acc)
