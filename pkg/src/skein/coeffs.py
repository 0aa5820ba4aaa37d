"""Exact coefficient arithmetic.

Two rings live here:

* :class:`LaurentA` -- integer Laurent polynomials in the skein variable ``A``.
* :class:`K0Poly` -- polynomials in the central variables ``R01``, ``R10``,
  ``R11`` and ``y`` with :class:`LaurentA` coefficients.  Every coefficient of
  a four-holed-sphere skein element lives in this ring.

``K0Poly`` is stored flat, as a map from ``(e01, e10, e11, ey, a)`` to a
nonzero integer, where ``a`` is the power of ``A``.  The nested view
(center monomial -> Laurent polynomial) is available through
:attr:`K0Poly.terms`.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Union

__all__ = [
    "LaurentA",
    "CenterMono",
    "K0Poly",
    "CENTER_NAMES",
    "k0_add",
    "k0_mul",
    "invert_A",
    "quantum_int",
    "is_nonneg",
]

CENTER_NAMES = ("R01", "R10", "R11", "y")

Scalar = Union[int, "LaurentA", "K0Poly"]


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


class LaurentA:
    """An integer Laurent polynomial in ``A``, stored as ``{exponent: coeff}``."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {0: terms}
        self._t = _clean(dict(terms))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentA:
        return cls({exp: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def degree(self) -> int | None:
        return max(self._t) if self._t else None

    def valuation(self) -> int | None:
        return min(self._t) if self._t else None

    def coeff(self, exp: int) -> int:
        return self._t.get(exp, 0)

    def invert(self) -> LaurentA:
        """Substitute ``A -> A^-1``."""
        return LaurentA({-e: c for e, c in self._t.items()})

    def substitute_power(self, k: int) -> LaurentA:
        """Substitute ``A -> A^k``."""
        return LaurentA({e * k: c for e, c in self._t.items()})

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._t)
        for e, c in other._t.items():
            out[e] = out.get(e, 0) + c
        return LaurentA(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentA({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentA(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentA:
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials are invertible")
            ((e, c),) = self._t.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentA({e * n: c if n % 2 else 1})
        out = LaurentA(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_laurent(other)
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
        return f"LaurentA({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in sorted(self._t.items()):
            mono = "" if e == 0 else ("A" if e == 1 else f"A^{e}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_laurent(x):
    if isinstance(x, LaurentA):
        return x
    if isinstance(x, int):
        return LaurentA(x)
    return NotImplemented


class CenterMono(NamedTuple):
    """Exponents of ``R01``, ``R10``, ``R11`` and ``y``."""

    e01: int = 0
    e10: int = 0
    e11: int = 0
    ey: int = 0


# positions of the R variables inside a flat key, indexed by their (d, n) mod 2 label
R_SLOT = {(0, 1): 0, (1, 0): 1, (1, 1): 2}


class K0Poly:
    """A polynomial over the central subring, stored flat.

    Keys are ``(e01, e10, e11, ey, a)``; values are nonzero integers.
    Instances are treated as immutable.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._t = {}
        elif _trusted:
            self._t = terms  # type: ignore[assignment]
        else:
            t: dict[tuple, int] = {}
            for k, c in terms.items():
                if len(k) != 5 or min(k[:4]) < 0:
                    raise ValueError(f"bad K0 key {k!r}")
                if c:
                    t[tuple(k)] = t.get(tuple(k), 0) + c
            self._t = _clean(t)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def one(cls) -> K0Poly:
        return cls({(0, 0, 0, 0, 0): 1}, _trusted=True)

    @classmethod
    def zero(cls) -> K0Poly:
        return cls({}, _trusted=True)

    @classmethod
    def const(cls, c: int) -> K0Poly:
        return cls({(0, 0, 0, 0, 0): c} if c else {}, _trusted=True)

    @classmethod
    def A(cls, exp: int, coeff: int = 1) -> K0Poly:
        return cls({(0, 0, 0, 0, exp): coeff} if coeff else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1) -> K0Poly:
        idx = CENTER_NAMES.index(name)
        key = [0, 0, 0, 0, 0]
        key[idx] = power
        return cls({tuple(key): 1}, _trusted=True)

    @classmethod
    def R(cls, d: int, n: int) -> K0Poly:
        """The central element ``R_{d,n}`` with indices taken mod 2."""
        label = (d % 2, n % 2)
        if label == (0, 0):
            raise K0ClosureError(f"R index ({d},{n}) is even in both slots")
        key = [0, 0, 0, 0, 0]
        key[R_SLOT[label]] = 1
        return cls({tuple(key): 1}, _trusted=True)

    @classmethod
    def from_laurent(cls, p: LaurentA, mono: CenterMono = CenterMono()) -> K0Poly:
        return cls({(*mono, e): c for e, c in p.terms.items()}, _trusted=True)

    @classmethod
    def from_terms(cls, terms: Mapping[CenterMono, LaurentA]) -> K0Poly:
        out: dict[tuple, int] = {}
        for mono, lp in terms.items():
            for e, c in lp.terms.items():
                key = (*mono, e)
                out[key] = out.get(key, 0) + c
        return cls(out)

    # views --------------------------------------------------------------
    @property
    def flat(self) -> dict[tuple, int]:
        return self._t

    @property
    def terms(self) -> dict[CenterMono, LaurentA]:
        grouped: dict[CenterMono, dict[int, int]] = {}
        for (e01, e10, e11, ey, a), c in self._t.items():
            grouped.setdefault(CenterMono(e01, e10, e11, ey), {})[a] = c
        return {m: LaurentA(t) for m, t in grouped.items()}

    def is_zero(self) -> bool:
        return not self._t

    def is_laurent(self) -> bool:
        """True when no central variable occurs."""
        return all(k[:4] == (0, 0, 0, 0) for k in self._t)

    def laurent_part(self) -> LaurentA:
        """Coefficient of the unit center monomial."""
        return LaurentA({k[4]: c for k, c in self._t.items() if k[:4] == (0, 0, 0, 0)})

    def a_exponents(self) -> set[int]:
        return {k[4] for k in self._t}

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _as_k0(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return K0Poly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return K0Poly({k: -c for k, c in self._t.items()}, _trusted=True)

    def __sub__(self, other):
        other = _as_k0(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_k0(other)
        if other is NotImplemented:
            return NotImplemented
        return K0Poly(_mul_flat(self._t, other._t), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> K0Poly:
        if n < 0:
            raise ValueError("negative powers are not defined in K0")
        out = K0Poly.one()
        for _ in range(n):
            out = out * self
        return out

    def invert_A(self) -> K0Poly:
        return K0Poly({(*k[:4], -k[4]): c for k, c in self._t.items()}, _trusted=True)

    def permute_R(self, perm: Mapping[int, int]) -> K0Poly:
        """Relabel R slots (0=R01, 1=R10, 2=R11) by ``perm``."""
        out = {}
        for k, c in self._t.items():
            nk = [0, 0, 0, k[3], k[4]]
            for src in range(3):
                nk[perm[src]] = k[src]
            out[tuple(nk)] = c
        return K0Poly(out, _trusted=True)

    def substitute_A_power(self, k: int) -> K0Poly:
        return K0Poly({(*key[:4], key[4] * k): c for key, c in self._t.items()}, _trusted=True)

    def __eq__(self, other):
        other = _as_k0(other)
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
        return f"K0Poly({self})"

    def __str__(self):
        from .serialize import format_k0

        return format_k0(self)


class K0ClosureError(ArithmeticError):
    """A coefficient would leave the central subring K0."""


def _as_k0(x):
    if isinstance(x, K0Poly):
        return x
    if isinstance(x, int):
        return K0Poly.const(x)
    if isinstance(x, LaurentA):
        return K0Poly.from_laurent(x)
    return NotImplemented


def _mul_flat(a: Mapping[tuple, int], b: Mapping[tuple, int]) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    get = out.get
    for (a0, a1, a2, a3, a4), c1 in a.items():
        for (b0, b1, b2, b3, b4), c2 in b.items():
            k = (a0 + b0, a1 + b1, a2 + b2, a3 + b3, a4 + b4)
            out[k] = get(k, 0) + c1 * c2
    return _clean(out)


# functional aliases ------------------------------------------------------

def k0_add(a: K0Poly, b: K0Poly) -> K0Poly:
    return a + b


def k0_mul(a: K0Poly, b: K0Poly) -> K0Poly:
    return a * b


def invert_A(a):
    """Negate every power of ``A``; works on any object with an ``invert_A`` method."""
    if isinstance(a, LaurentA):
        return a.invert()
    return a.invert_A()


def quantum_int(n: int) -> K0Poly:
    """``[n]_q`` at ``q = A^4``, i.e. ``1 + A^4 + ... + A^(4(n-1))``."""
    if n < 1:
        raise ValueError(f"quantum integer needs n >= 1, got {n}")
    return K0Poly({(0, 0, 0, 0, 4 * i): 1 for i in range(n)}, _trusted=True)


def is_nonneg(a: K0Poly | LaurentA | Iterable) -> bool:
    """True iff every integer coefficient is >= 0."""
    if isinstance(a, K0Poly):
        return all(c >= 0 for c in a.flat.values())
    if isinstance(a, LaurentA):
        return all(c >= 0 for c in a.terms.values())
    return all(is_nonneg(x) for x in a)
