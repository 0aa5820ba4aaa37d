"""Exact products of multicurves in Kauffman bracket skein algebras.

The main entry points are :class:`Engine` for the thickened four-holed
sphere and :class:`TorusElement` for the thickened torus.
"""

from .coeffs import CenterMono, K0ClosureError, K0Poly, LaurentA, invert_A, is_nonneg, k0_add, k0_mul, quantum_int
from .curves import EMPTY, S1, S2, Curve, UniMatrix, farey_parents, normalize, pair_det, reduce_pair
from .element import DecoratedCurve, SkeinElement, decorated, from_basis, to_basis, to_T_basis
from .engine import (
    Engine,
    ProductCache,
    RecursionContractError,
    SpecializationError,
    closed_m0,
    closed_n1,
    default_engine,
    mul,
    mul_basis,
    mul_det0,
    mul_det1,
    mul_det2,
    specialize_torus,
)
from .mcg import apply_matrix, mirror
from .parser import ParseError, parse_element, parse_expr
from .serialize import serialize_element, serialize_torus
from .torus import TorusElement, fg_mul_basis, torus_curve, torus_mul, torus_verify_relations

__version__ = "0.1.0"
