"""Expression grammar for skein elements.

::

    expr    := ["+"|"-"] term (("+"|"-") term)*
    term    := factor (("*"|"·") factor)*
    factor  := atom ["^" UINT]
    atom    := curve | "T[" curve "]" | "S[" curve "]" | "(" expr ")"
             | "A" ["^" INT] | "R01" | "R10" | "R11" | "y" | UINT
    curve   := INT "/" INT          (n/d, the curve (d,n))
             | "(" INT "," INT ")"  (the curve (d,n))

``1`` is the empty link; ``0/0`` is rejected.  A minus sign directly in
front of a fraction is read as the sign of its numerator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .coeffs import K0Poly, LaurentA
from .curves import Curve, normalize
from .element import SkeinElement, decorated
from .torus import TorusElement

__all__ = [
    "ParseError",
    "CurveNode",
    "ScalarNode",
    "ProductNode",
    "SumNode",
    "PowerNode",
    "ExprAST",
    "parse_expr",
    "evaluate",
    "parse_element",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class CurveNode:
    curve: Curve
    decoration: str = "plain"


@dataclass(frozen=True)
class ScalarNode:
    value: K0Poly


@dataclass(frozen=True)
class ProductNode:
    factors: tuple


@dataclass(frozen=True)
class SumNode:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class PowerNode:
    base: object
    exp: int


ExprAST = Union[CurveNode, ScalarNode, ProductNode, SumNode, PowerNode]

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>R01|R10|R11|[A-Za-z]\w*)|(?P<op>[-+*/,()\[\]^·−]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        value = m.group(kind)
        if value == "·":
            value = "*"
        elif value == "−":
            value = "-"
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


_SCALARS = {"R01", "R10", "R11", "y"}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def at(self, value: str, offset: int = 0) -> bool:
        kind, v, _ = self.peek(offset)
        return kind == "op" and v == value

    def signed_int(self) -> int:
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, v, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected an integer, found {v or 'end of input'!r}", pos)
        return sign * int(v)

    # grammar ----------------------------------------------------------------
    def parse(self) -> ExprAST:
        node = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return node

    def _signed_fraction_ahead(self) -> bool:
        return self.at("-") and self.peek(1)[0] == "int" and self.at("/", 2)

    def expr(self) -> ExprAST:
        terms = []
        sign = 1
        if (self.at("+") or self.at("-")) and not self._signed_fraction_ahead():
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return SumNode(tuple(terms))

    def term(self) -> ExprAST:
        factors = [self.factor()]
        while self.at("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ProductNode(tuple(factors))

    def factor(self) -> ExprAST:
        base = self.atom()
        if self.at("^"):
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return PowerNode(base, int(v))
        return base

    def curve(self) -> Curve:
        kind, v, pos = self.peek()
        if self.at("("):
            self.take()
            d = self.signed_int()
            self.expect(",")
            n = self.signed_int()
            self.expect(")")
            return normalize(d, n)
        if kind == "int" or self._signed_fraction_ahead():
            num = self.signed_int()
            self.expect("/")
            den = self.signed_int()
            if num == 0 and den == 0:
                raise ParseError("0/0 is not a curve; write 1 for the empty link", pos)
            return normalize(den, num)
        raise ParseError(f"expected a curve, found {v or 'end of input'!r}", pos)

    def atom(self) -> ExprAST:
        kind, v, pos = self.peek()
        if kind == "int":
            if self.at("/", 1):
                return CurveNode(self.curve())
            self.take()
            return ScalarNode(K0Poly.const(int(v)))
        if self._signed_fraction_ahead():
            return CurveNode(self.curve())
        if self.at("("):
            nxt = self.peek(1)
            pair = nxt[0] == "int" or (nxt[1] in "+-" and self.peek(2)[0] == "int")
            if pair:
                j = 2 if nxt[0] == "int" else 3
                if self.at(",", j):
                    return CurveNode(self.curve())
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            if v in ("T", "S") and self.at("[", 1):
                self.take()
                self.take()
                c = self.curve()
                self.expect("]")
                return CurveNode(c, v)
            if v == "A":
                self.take()
                if self.at("^"):
                    self.take()
                    return ScalarNode(K0Poly.A(self.signed_int()))
                return ScalarNode(K0Poly.A(1))
            if v in _SCALARS:
                self.take()
                return ScalarNode(K0Poly.var(v))
            raise ParseError(f"unknown name {v!r}", pos)
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_expr(text: str) -> ExprAST:
    """Parse ``text`` into an :data:`ExprAST`; raises :class:`ParseError`."""
    return _Parser(text).parse()


def _is_scalar(x) -> bool:
    if isinstance(x, SkeinElement):
        return all(c.is_empty() for c in x.terms)
    return all(c.is_empty() for c in x.terms)


def evaluate(node: ExprAST, surface: str = "f04", engine=None):
    """Evaluate to a :class:`SkeinElement` (``f04``) or :class:`TorusElement` (``torus``)."""
    if surface not in ("f04", "torus"):
        raise ValueError(f"unknown surface {surface!r}")
    if engine is None and surface == "f04":
        from .engine import default_engine

        engine = default_engine()

    def scalar(k: K0Poly):
        if surface == "f04":
            return SkeinElement.scalar(k)
        if not k.is_laurent():
            raise ValueError("center variables R01, R10, R11, y do not exist on the torus")
        return TorusElement.scalar(k.laurent_part())

    def one():
        return scalar(K0Poly.one())

    def mul(x, y):
        if surface == "torus":
            return x * y
        if _is_scalar(x):
            return y.scale(x.coeff(Curve(0, 0)))
        if _is_scalar(y):
            return x.scale(y.coeff(Curve(0, 0)))
        return engine.mul(x, y)

    def ev(n):
        if isinstance(n, ScalarNode):
            return scalar(n.value)
        if isinstance(n, CurveNode):
            if surface == "f04":
                return decorated(n.curve, n.decoration)
            if n.decoration == "T":
                return TorusElement({n.curve: 1}, basis="T") if not n.curve.is_empty() else scalar(K0Poly.const(2))
            if n.decoration == "S":
                return _torus_s(n.curve)
            return TorusElement.curve(n.curve.d, n.curve.n)
        if isinstance(n, ProductNode):
            out = ev(n.factors[0])
            for f in n.factors[1:]:
                out = mul(out, ev(f))
            return out
        if isinstance(n, SumNode):
            out = None
            for sign, t in n.terms:
                v = ev(t)
                v = v if sign > 0 else -v
                out = v if out is None else out + v
            return out
        if isinstance(n, PowerNode):
            base = ev(n.base)
            out = one()
            for _ in range(n.exp):
                out = mul(out, base)
            return out
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)


def _torus_s(c: Curve) -> TorusElement:
    from .chebyshev import s_expand

    if c.is_empty():
        return TorusElement.scalar(LaurentA(1))
    x = c.slope
    return TorusElement(
        {x.scaled(j): a for j, a in enumerate(s_expand(c.multiplicity)) if a}, basis="mono"
    )


def parse_element(text: str, surface: str = "f04", engine=None):
    return evaluate(parse_expr(text), surface, engine)
