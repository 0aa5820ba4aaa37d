"""Canonical text, JSON and LaTeX forms of skein elements.

Every summand is one monomial ``[c·]A^k·R01^a·R10^b·R11^c·y^e·(d,n)``.
Curves are listed in descending ``(d, n)`` order; inside a curve, center
monomials ascend lexicographically by ``(e01, e10, e11, ey)`` and A-powers
ascend.  The text form is accepted back by :func:`skein.parser.parse_expr`.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .coeffs import CENTER_NAMES, K0Poly, LaurentA
from .curves import Curve, normalize
from .element import SkeinElement, from_basis, to_basis
from .torus import TorusElement

__all__ = [
    "format_k0",
    "format_element",
    "format_torus",
    "serialize_element",
    "serialize_torus",
    "element_to_obj",
    "element_from_obj",
    "torus_to_obj",
    "torus_from_obj",
    "k0_to_obj",
    "k0_from_obj",
    "dumps",
]

_LATEX_NAMES = ("R_{0,1}", "R_{1,0}", "R_{1,1}", "y")
_TEXT_SEP = "·"


def _factors(key: tuple, latex: bool) -> list[str]:
    *center, a = key
    out = []
    if a:
        out.append("A" if a == 1 else (f"A^{{{a}}}" if latex else f"A^{a}"))
    names = _LATEX_NAMES if latex else CENTER_NAMES
    for name, e in zip(names, center):
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    return out


def _curve_text(c: Curve, basis: str, latex: bool) -> str | None:
    if c.is_empty():
        return None
    if latex:
        return f"({c.d},{c.n})" + ("" if basis == "mono" else f"_{basis}")
    body = f"({c.d},{c.n})"
    return body if basis == "mono" else f"{basis}[{body}]"


def _summands(view: Mapping[Curve, K0Poly], basis: str, latex: bool) -> list[tuple[int, str]]:
    sep = " " if latex else _TEXT_SEP
    out = []
    for c in sorted(view, reverse=True):
        curve = _curve_text(c, basis, latex)
        for key, v in sorted(view[c].flat.items()):
            parts = _factors(key, latex)
            if curve is not None:
                parts.append(curve)
            if abs(v) != 1 or not parts:
                parts.insert(0, str(abs(v)))
            out.append((v, sep.join(parts)))
    return out


def _join(summands: list[tuple[int, str]]) -> str:
    if not summands:
        return "0"
    first_v, first = summands[0]
    text = ("-" if first_v < 0 else "") + first
    for v, s in summands[1:]:
        text += (" - " if v < 0 else " + ") + s
    return text


def format_k0(k: K0Poly, latex: bool = False) -> str:
    return _join(_summands({Curve(0, 0): k}, "mono", latex))


def _view(x: SkeinElement, basis: str) -> dict[Curve, K0Poly]:
    return x.terms if basis == "mono" else to_basis(x, basis)


def format_element(x: SkeinElement, basis: str = "mono", latex: bool = False) -> str:
    return _join(_summands(_view(x, basis), basis, latex))


def _torus_view(x: TorusElement, basis: str) -> dict[Curve, K0Poly]:
    view = x.view("T" if basis == "T" else "mono")
    return {c: K0Poly.from_laurent(k) for c, k in view.items()}


def format_torus(x: TorusElement, basis: str = "mono", latex: bool = False) -> str:
    if basis == "S":
        raise ValueError("torus elements are shown in the mono or T basis")
    return _join(_summands(_torus_view(x, basis), basis, latex))


# JSON ----------------------------------------------------------------------


def k0_to_obj(k: K0Poly) -> list[dict[str, Any]]:
    out = []
    for mono, lp in sorted(k.terms.items()):
        out.append(
            {
                "e": dict(zip(CENTER_NAMES, mono)),
                "A": [[e, c] for e, c in sorted(lp.terms.items())],
            }
        )
    return out


def k0_from_obj(obj: list) -> K0Poly:
    flat: dict[tuple, int] = {}
    for entry in obj:
        e = entry["e"]
        center = tuple(int(e.get(name, 0)) for name in CENTER_NAMES)
        if any(v < 0 for v in center):
            raise ValueError(f"negative center exponent in {e}")
        for a, c in entry["A"]:
            key = center + (int(a),)
            flat[key] = flat.get(key, 0) + int(c)
    return K0Poly(flat)


def _view_to_obj(view: Mapping[Curve, K0Poly], algebra: str, basis: str) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "algebra": algebra,
        "terms": [{"d": c.d, "n": c.n, "coeff": k0_to_obj(view[c])} for c in sorted(view, reverse=True)],
    }
    if basis != "mono":
        obj["basis"] = basis
    return obj


def _obj_to_view(obj: Mapping[str, Any]) -> tuple[dict[Curve, K0Poly], str]:
    if not isinstance(obj, Mapping) or not isinstance(obj.get("terms"), list):
        raise ValueError("element JSON needs a 'terms' list")
    view: dict[Curve, K0Poly] = {}
    for t in obj["terms"]:
        c = normalize(int(t["d"]), int(t["n"]))
        view[c] = view.get(c, K0Poly.zero()) + k0_from_obj(t["coeff"])
    return view, obj.get("basis", "mono")


def element_to_obj(x: SkeinElement, basis: str = "mono") -> dict[str, Any]:
    return _view_to_obj(_view(x, basis), "f04", basis)


def element_from_obj(obj: Mapping[str, Any]) -> SkeinElement:
    if obj.get("algebra", "f04") != "f04":
        raise ValueError(f"expected algebra 'f04', got {obj.get('algebra')!r}")
    view, basis = _obj_to_view(obj)
    return from_basis(view, basis)


def torus_to_obj(x: TorusElement, basis: str = "mono") -> dict[str, Any]:
    return _view_to_obj(_torus_view(x, basis), "torus", basis)


def torus_from_obj(obj: Mapping[str, Any]) -> TorusElement:
    if obj.get("algebra") != "torus":
        raise ValueError(f"expected algebra 'torus', got {obj.get('algebra')!r}")
    view, basis = _obj_to_view(obj)
    out = {}
    for c, k in view.items():
        if not k.is_laurent():
            raise ValueError(f"torus coefficient on {c} has center variables")
        out[c] = k.laurent_part()
    return TorusElement(out, basis="T" if basis == "T" else "mono")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def serialize_element(x: SkeinElement, format: str = "text", basis: str = "mono") -> str:
    if format == "text":
        return format_element(x, basis)
    if format == "latex":
        return format_element(x, basis, latex=True)
    if format == "json":
        return dumps(element_to_obj(x, basis))
    raise ValueError(f"unknown format {format!r}")


def serialize_torus(x: TorusElement, format: str = "text", basis: str = "mono") -> str:
    if format == "text":
        return format_torus(x, basis)
    if format == "latex":
        return format_torus(x, basis, latex=True)
    if format == "json":
        return dumps(torus_to_obj(x, basis))
    raise ValueError(f"unknown format {format!r}")


def laurent_str(p: LaurentA) -> str:
    return format_k0(K0Poly.from_laurent(p))
