"""Chebyshev polynomials of the first (T) and second (S) kind.

Both families satisfy ``P_n = x P_{n-1} - P_{n-2}``; they differ in the
initial conditions ``T_0 = 2, T_1 = x`` and ``S_0 = 1, S_1 = x``.
Polynomials are dense integer coefficient tuples, lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import zip_longest

__all__ = [
    "PolyZ",
    "t_expand",
    "s_expand",
    "power_to_T",
    "power_to_S",
    "poly_add",
    "poly_sub",
    "poly_mul",
]

PolyZ = tuple  # tuple[int, ...], index = degree, no trailing zeros


def _trim(coeffs) -> PolyZ:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(p: PolyZ, q: PolyZ) -> PolyZ:
    return _trim(a + b for a, b in zip_longest(p, q, fillvalue=0))


def poly_sub(p: PolyZ, q: PolyZ) -> PolyZ:
    return _trim(a - b for a, b in zip_longest(p, q, fillvalue=0))


def poly_mul(p: PolyZ, q: PolyZ) -> PolyZ:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _shift(p: PolyZ) -> PolyZ:
    return (0,) + p if p else ()


@lru_cache(maxsize=None)
def t_expand(r: int) -> PolyZ:
    """Power-basis coefficients of ``T_r``."""
    if r < 0:
        raise ValueError(f"T index must be >= 0, got {r}")
    if r == 0:
        return (2,)
    if r == 1:
        return (0, 1)
    return poly_sub(_shift(t_expand(r - 1)), t_expand(r - 2))


@lru_cache(maxsize=None)
def s_expand(r: int) -> PolyZ:
    """Power-basis coefficients of ``S_r``; ``S_{-1} = 0``."""
    if r < -1:
        raise ValueError(f"S index must be >= -1, got {r}")
    if r == -1:
        return ()
    if r == 0:
        return (1,)
    if r == 1:
        return (0, 1)
    return poly_sub(_shift(s_expand(r - 1)), s_expand(r - 2))


@lru_cache(maxsize=None)
def _power_to_basis(j: int, kind: str) -> tuple[tuple[int, int], ...]:
    # back-substitution against the monic triangular basis
    expand = t_expand if kind == "T" else s_expand
    rem = list((0,) * j + (1,))
    out: dict[int, int] = {}
    for deg in range(j, 0, -1):
        c = rem[deg] if deg < len(rem) else 0
        if c:
            out[deg] = c
            for i, b in enumerate(expand(deg)):
                rem[i] -= c * b
    if rem[0]:
        out[0] = rem[0]
    return tuple(sorted(out.items()))


def power_to_T(j: int) -> dict[int, int]:
    """Write ``x^j`` as ``sum_{i>=1} c_i T_i(x) + c``.

    Key ``0`` holds the plain constant ``c`` (never a multiple of ``T_0``).

    >>> power_to_T(2)
    {0: 2, 2: 1}
    """
    if j < 0:
        raise ValueError(f"power must be >= 0, got {j}")
    return dict(_power_to_basis(j, "T"))


def power_to_S(j: int) -> dict[int, int]:
    """Write ``x^j`` as ``sum_{i>=0} c_i S_i(x)``; key ``0`` is ``S_0 = 1``."""
    if j < 0:
        raise ValueError(f"power must be >= 0, got {j}")
    return dict(_power_to_basis(j, "S"))
