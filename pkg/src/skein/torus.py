"""Skein algebra of the thickened torus via the Frohman-Gelca product-to-sum rule.

Elements are kept in the T-decorated basis, where the product of two basis
elements has exactly two terms.  Key ``(0,0)`` is the empty link carrying
the constant term; a *decorated* empty curve would be ``T_0 = 2``.
"""

from __future__ import annotations

from typing import Mapping

from .chebyshev import power_to_T, t_expand
from .coeffs import LaurentA
from .curves import EMPTY, Curve, normalize, pair_det

__all__ = ["TorusElement", "fg_mul_basis", "torus_mul", "torus_verify_relations", "torus_curve"]


def _lp(c) -> LaurentA:
    return c if isinstance(c, LaurentA) else LaurentA(c)


class TorusElement:
    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Curve, LaurentA | int] | None = None, basis: str = "T"):
        if basis not in ("T", "mono"):
            raise ValueError(f"unknown basis {basis!r}")
        acc: dict[Curve, LaurentA] = {}
        for c, k in (terms or {}).items():
            c = normalize(*c)
            k = _lp(k)
            if basis == "T" or c.is_empty():
                parts = {c: 1}
            else:
                x = c.slope
                parts = {x.scaled(i): a for i, a in power_to_T(c.multiplicity).items()}
            for key, a in parts.items():
                acc[key] = acc.get(key, LaurentA()) + k * a
        self._t = {c: k for c, k in acc.items() if k}

    @classmethod
    def curve(cls, d: int, n: int, coeff=1, basis: str = "mono") -> TorusElement:
        return cls({Curve(d, n): coeff}, basis=basis)

    @classmethod
    def scalar(cls, coeff) -> TorusElement:
        return cls({EMPTY: coeff})

    @property
    def terms(self) -> dict[Curve, LaurentA]:
        """T-basis coefficients."""
        return dict(self._t)

    def mono_terms(self) -> dict[Curve, LaurentA]:
        acc: dict[Curve, LaurentA] = {}
        for c, k in self._t.items():
            if c.is_empty():
                parts = {EMPTY: 1}
            else:
                x = c.slope
                parts = {x.scaled(j): a for j, a in enumerate(t_expand(c.multiplicity)) if a}
            for key, a in parts.items():
                acc[key] = acc.get(key, LaurentA()) + k * a
        return {c: k for c, k in acc.items() if k}

    def view(self, basis: str = "T") -> dict[Curve, LaurentA]:
        return self.terms if basis == "T" else self.mono_terms()

    def is_zero(self) -> bool:
        return not self._t

    def __add__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        out = dict(self._t)
        for c, k in other._t.items():
            out[c] = out.get(c, LaurentA()) + k
        return TorusElement(out)

    def __neg__(self):
        return TorusElement({c: -k for c, k in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> TorusElement:
        k = _lp(coeff)
        return TorusElement({c: v * k for c, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return torus_mul(self, other)
        if isinstance(other, (int, LaurentA)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentA)):
            return self.scale(other)
        return NotImplemented

    def invert_A(self) -> TorusElement:
        return TorusElement({c: k.invert() for c, k in self._t.items()})

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        from .serialize import format_torus

        return f"TorusElement({format_torus(self)})"


def torus_curve(d: int, n: int, coeff=1) -> TorusElement:
    """A plain multicurve on the torus."""
    return TorusElement.curve(d, n, coeff, basis="mono")


def fg_mul_basis(a: Curve, b: Curve) -> TorusElement:
    """Product of the T-decorated curves ``a_T * b_T``; ``(0,0)_T`` counts as 2."""
    a, b = normalize(*a), normalize(*b)
    e = pair_det(a, b)
    out: dict[Curve, LaurentA] = {}
    for c, exp in ((normalize(a.d + b.d, a.n + b.n), e), (normalize(a.d - b.d, a.n - b.n), -e)):
        weight = LaurentA.monomial(exp, 2 if c.is_empty() else 1)
        out[c] = out.get(c, LaurentA()) + weight
    return TorusElement(out)


def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    acc: dict[Curve, LaurentA] = {}
    for a, ka in x.terms.items():
        for b, kb in y.terms.items():
            k = ka * kb
            if a.is_empty() or b.is_empty():
                prod = {b if a.is_empty() else a: LaurentA(1)}
            else:
                prod = fg_mul_basis(a, b).terms
            for c, w in prod.items():
                acc[c] = acc.get(c, LaurentA()) + k * w
    return TorusElement(acc)


def torus_verify_relations() -> dict[str, TorusElement]:
    """Residual (left minus right) of the four defining torus relations."""
    c = torus_curve
    A = LaurentA.monomial
    x, z, w = c(1, 0), c(0, 1), c(1, 1)
    q = A(2) - A(-2)
    residuals = {
        "x_z": (x * z).scale(A(1)) - (z * x).scale(A(-1)) - w.scale(q),
        "z_w": (z * w).scale(A(1)) - (w * z).scale(A(-1)) - x.scale(q),
        "w_x": (w * x).scale(A(1)) - (x * w).scale(A(-1)) - z.scale(q),
        "cubic": (c(2, 2) + c(2, 0)).scale(A(2))
        + c(0, 2).scale(A(-2))
        - TorusElement.scalar(2 * (A(2) + A(-2)))
        - (x * z * w).scale(A(1)),
    }
    return residuals
