"""Mapping classes acting on skein elements.

A determinant-one matrix moves every curve by its action on fractions and
relabels the ``R`` variables by the same action on their ``(d, n)`` indices
mod 2.  ``y`` and ``A`` are fixed.  The mirror reflects slopes and swaps
``A`` with ``A^-1``.
"""

from __future__ import annotations

from .coeffs import R_SLOT, K0ClosureError, K0Poly
from .curves import UniMatrix, normalize
from .element import SkeinElement

__all__ = ["apply_matrix", "mirror", "r_permutation", "apply_to_k0"]

_LABELS = {slot: label for label, slot in R_SLOT.items()}


def r_permutation(m: UniMatrix) -> dict[int, int]:
    """Slot permutation (0=R01, 1=R10, 2=R11) induced by ``m``."""
    perm = {}
    for slot, label in _LABELS.items():
        image = m.act_mod2(label)
        if image == (0, 0):
            raise K0ClosureError(f"matrix {m.rows()} sends R{label} to R00")
        perm[slot] = R_SLOT[image]
    return perm


def apply_to_k0(k: K0Poly, m: UniMatrix) -> K0Poly:
    return k.permute_R(r_permutation(m))


def apply_matrix(e: SkeinElement, m: UniMatrix) -> SkeinElement:
    if m.det() != 1:
        raise ValueError("only determinant +1 matrices act; compose with mirror() for the other coset")
    if m.is_identity():
        return e
    perm = r_permutation(m)
    identity_perm = all(perm[i] == i for i in range(3))
    out: dict = {}
    for c, k in e.terms.items():
        image = m.act(c)
        out[image] = k if identity_perm else k.permute_R(perm)
    return SkeinElement._wrap(out)


def mirror(e: SkeinElement) -> SkeinElement:
    return SkeinElement._wrap({normalize(c.d, -c.n): k.invert_A() for c, k in e.terms.items()})
