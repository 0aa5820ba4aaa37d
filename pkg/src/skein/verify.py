"""Batch checks of the algebra: relations, bounds, symmetries, positivity, timing.

Every suite returns a :class:`Report`.  Random suites take a seed and are
deterministic given it.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable

from .coeffs import K0Poly, is_nonneg
from .curves import S1, S2, Curve, UniMatrix, farey_parents, normalize, pair_det
from .element import SkeinElement, decorated, to_basis
from .engine import Engine, closed_m0, closed_n1
from .mcg import apply_matrix

__all__ = [
    "DEFAULT_SEED",
    "Report",
    "verify_relations",
    "verify_long_relation",
    "verify_bounds",
    "verify_closed_forms",
    "verify_assoc",
    "verify_swap",
    "verify_equivariance",
    "verify_assoc_swap_equivariance",
    "positivity_scan",
    "positivity_representatives",
    "sample_positive_pairs",
    "bench",
    "bench_csv",
    "fibonacci_slopes",
    "BENCH_HEADER",
]

DEFAULT_SEED = 20180301
BENCH_HEADER = ("det", "calls", "cache_hits", "terms", "micros")


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0
    counters: dict[str, int] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, case: Any, residual: SkeinElement | None = None, message: str | None = None) -> bool:
        """Count a case; record a failure iff the residual is nonzero or a message is given."""
        self.cases += 1
        if message is None and (residual is None or residual.is_zero()):
            return True
        entry: dict[str, Any] = {"case": _jsonable(case)}
        if residual is not None and not residual.is_zero():
            entry["residual"] = str(residual)
        if message:
            entry["message"] = message
        self.failures.append(entry)
        return False

    def merge(self, other: Report) -> Report:
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.seconds += other.seconds
        for k, v in other.counters.items():
            self.counters[k] = self.counters.get(k, 0) + v
        self.notes[other.suite] = other.notes
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "cases": self.cases,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
            "counters": self.counters,
            "notes": _jsonable(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.suite}: {self.cases} cases, {status}, {self.seconds:.2f}s"


def _jsonable(x):
    if isinstance(x, Curve):
        return [x.d, x.n]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (SkeinElement, K0Poly)):
        return str(x)
    return x


def _timed(suite: str):
    def wrap(fn: Callable[..., Report]):
        def inner(*args, **kwargs) -> Report:
            t0 = time.perf_counter()
            rep = fn(*args, **kwargs)
            rep.seconds = time.perf_counter() - t0
            return rep

        inner.__name__ = fn.__name__
        inner.__doc__ = fn.__doc__
        return inner

    return wrap


def _engine(engine: Engine | None) -> Engine:
    return engine if engine is not None else Engine()


def _c(d: int, n: int, coeff=1) -> SkeinElement:
    return SkeinElement.curve(d, n, coeff)


A = K0Poly.A


# --------------------------------------------------------------------------
# relations


@_timed("relations")
def verify_relations(engine: Engine | None = None) -> Report:
    """Residuals of the three commutator relations among (1,0), (0,1), (1,1)."""
    e = _engine(engine)
    rep = Report("relations")
    q4 = A(4) - A(-4)
    q2 = A(2) - A(-2)
    cases = {
        "x_z": ((1, 0), (0, 1), (1, 1), "R11"),
        "z_w": ((0, 1), (1, 1), (1, 0), "R10"),
        "w_x": ((1, 1), (1, 0), (0, 1), "R01"),
    }
    for name, (x, z, target, r) in cases.items():
        lhs = e.mul_basis(x, z).scale(A(2)) - e.mul_basis(z, x).scale(A(-2))
        rhs = _c(*target, q4) + SkeinElement.scalar(q2 * K0Poly.var(r))
        residual = lhs - rhs
        rep.notes[name] = str(residual)
        rep.check(name, residual)
    return rep


def _long_relation(e: Engine, inner: K0Poly) -> SkeinElement:
    x, z, w = _c(1, 0), _c(0, 1), _c(1, 1)
    r01, r10, r11, y = (K0Poly.var(v) for v in ("R01", "R10", "R11", "y"))
    out = (_c(2, 2) + _c(2, 0, inner)).scale(A(4))
    out = out + _c(0, 2, A(-4))
    out = out + (_c(1, 0, r10) + _c(1, 1, r11)).scale(A(2))
    out = out + _c(0, 1, A(-2) * r01)
    out = out + SkeinElement.scalar(y - (A(4) + A(-4)) * 2)
    return out - e.product(x, z, w).scale(A(2))


@_timed("long")
def verify_long_relation(engine: Engine | None = None) -> Report:
    """Evaluate both candidate forms of the long relation.

    ``a2_weighted`` carries an extra ``A^2`` on ``(1,0)^2`` inside the bracket;
    ``unweighted`` drops it.  The suite fails unless at least one vanishes.
    """
    e = _engine(engine)
    rep = Report("long")
    forms = {"a2_weighted": A(2), "unweighted": K0Poly.one()}
    vanishing = []
    for name, inner in forms.items():
        residual = _long_relation(e, inner)
        rep.cases += 1
        rep.notes[f"{name}_residual"] = str(residual)
        if residual.is_zero():
            vanishing.append(name)
    rep.notes["vanishing"] = vanishing
    if not vanishing:
        rep.failures.append({"case": "long relation", "message": "no candidate form vanishes"})
    return rep


# --------------------------------------------------------------------------
# structural bounds


def _leading(a: Curve, b: Curve, det: int, decoration: str = "plain") -> SkeinElement:
    s = normalize(a.d + b.d, a.n + b.n)
    t = normalize(a.d - b.d, a.n - b.n)
    return decorated(s, decoration, A(2 * det)) + decorated(t, decoration, A(-2 * det))


def sample_positive_pairs(count: int, seed: int = DEFAULT_SEED, max_entry: int = 4, max_d: int = 6):
    """Pairs ``(a, b)`` with positive entries and ``det(a, b) > 0``.

    Each pair is the image of ``(d,n), (0,1)`` with ``0 <= n <= d`` under a
    determinant-one matrix with nonnegative entries, so ``det(a, b) = d``.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n2, d2 = rng.randint(1, max_entry), rng.randint(1, max_entry)
        if gcd(n2, d2) != 1:
            continue
        sols = [
            (a12, a22)
            for a22 in range(max_entry + 1)
            for a12 in range(max_entry + 1)
            if n2 * a22 - a12 * d2 == 1
        ]
        if not sols:
            continue
        a12, a22 = rng.choice(sols)
        d = rng.randint(1, max_d)
        n = rng.randint(0, d)
        a = Curve(d2 * n + a22 * d, n2 * n + a12 * d)
        if a.d < 1 or a.n < 1:
            continue
        out.append((a, Curve(d2, n2)))
    return out


def _shape_4_8(e: Engine, d: int, n: int) -> tuple[SkeinElement, list[Curve]]:
    """Remainder of ``(d,n)*(0,1)`` after the two leading terms, and its out-of-range curves.

    For ``n = 0`` and ``d >= 2`` the first factor is read as ``(d,0)_T``.
    """
    first = decorated(Curve(d, n), "T" if n == 0 and d >= 2 else "plain")
    prod = e.mul(first, _c(0, 1))
    rem = prod - _leading(Curve(d, n), Curve(0, 1), d)
    bad = [c for c in rem.curves() if not (0 <= c.d <= d - 1 and 0 <= c.n <= n)]
    return rem, bad


@_timed("bounds")
def verify_bounds(
    maxd: int = 25, samples: int = 200, seed: int = DEFAULT_SEED, engine: Engine | None = None
) -> Report:
    """Shape and remainder bounds of ``(d,n)*(0,1)`` and of positive-pair products.

    * ``(d,n)*(0,1)``, ``0 <= n <= d <= maxd``: leading terms
      ``A^{2d}(d,n+1) + A^{-2d}(d,n-1)``, remainder curves with
      ``0 <= q <= d-1`` and ``0 <= p <= n``.
    * sampled positive pairs: remainder curves with ``0 <= p < n1+n2`` and
      ``0 <= q < d1+d2``.
    * Farey parents ``(d1,n1)`` of ``(d2,n2)``: ``|n1 q - d1 p| <= d1`` on the
      remainder of ``(d2,n2)*(0,1)``.

    Plain ``(d,0)`` with ``d >= 2`` is a power of ``(1,0)`` and its product
    with ``(0,1)`` has remainder terms such as ``2(0,1)``; those first
    factors are checked T-decorated and the plain exceptions are listed in
    ``notes["plain_n0_exceptions"]``.
    """
    if maxd < 1:
        raise ValueError("maxd must be >= 1")
    e = _engine(engine)
    rep = Report("bounds")
    exceptions = []
    for d in range(1, maxd + 1):
        for n in range(0, d + 1):
            _, bad = _shape_4_8(e, d, n)
            rep.check(("shape", d, n), message=f"remainder curves out of range: {bad}" if bad else None)
            if n == 0 and d >= 2:
                plain = e.mul_basis((d, 0), (0, 1)) - _leading(Curve(d, 0), Curve(0, 1), d)
                if any(not (0 <= c.d <= d - 1 and 0 <= c.n <= 0) for c in plain.curves()):
                    exceptions.append([d, 0])
    rep.notes["plain_n0_exceptions"] = exceptions

    for a, b in sample_positive_pairs(samples, seed):
        det = pair_det(a, b)
        rem = e.mul_basis(a, b) - _leading(a, b, det)
        bad = [c for c in rem.curves() if not (0 <= c.n < a.n + b.n and 0 <= c.d < a.d + b.d)]
        rep.check(("positive", a, b), message=f"remainder curves out of range: {bad}" if bad else None)

    for d2 in range(2, maxd + 1):
        for n2 in range(0, d2 + 1):
            if gcd(d2, n2) != 1:
                continue
            rem = e.mul_basis((d2, n2), (0, 1)) - _leading(Curve(d2, n2), Curve(0, 1), d2)
            for d1, n1 in farey_parents(Curve(d2, n2)):
                bad = [c for c in rem.curves() if abs(n1 * c.d - d1 * c.n) > d1]
                rep.check(("farey", (d2, n2), (d1, n1)), message=f"|n1 q - d1 p| > d1 for {bad}" if bad else None)
    rep.notes["seed"] = seed
    rep.counters = e.cache.counters()
    return rep


@_timed("closed")
def verify_closed_forms(max_m: int = 20, max_n: int = 20) -> Report:
    """Closed formulas against the generic recursion (closed forms disabled)."""
    e = Engine(use_closed_forms=False)
    rep = Report("closed")
    for m in range(1, max_m + 1):
        generic = e.mul(decorated(Curve(m, 0), "T"), _c(0, 1))
        rep.check(("m0", m), closed_m0(m) - generic)
    for n in range(0, max_n + 1):
        rep.check(("n1", n), closed_n1(n) - e.mul_basis((n, 1), (0, 1)))
    rep.counters = e.cache.counters()
    return rep


# --------------------------------------------------------------------------
# symmetries


def _random_curve(rng: random.Random, max_entry: int) -> Curve:
    while True:
        d, n = rng.randint(0, max_entry), rng.randint(-max_entry, max_entry)
        if (d, n) != (0, 0) and normalize(d, n) == (d, n):
            return Curve(d, n)


def _random_pair(rng: random.Random, max_entry: int, max_det: int) -> tuple[Curve, Curve]:
    while True:
        a, b = _random_curve(rng, max_entry), _random_curve(rng, max_entry)
        if abs(pair_det(a, b)) <= max_det:
            return a, b


def _random_word(rng: random.Random, length: int) -> tuple[UniMatrix, str]:
    gens = {"s1": S1, "s2": S2, "s1'": S1.inverse(), "s2'": S2.inverse()}
    names = [rng.choice(list(gens)) for _ in range(length)]
    m = UniMatrix(1, 0, 0, 1)
    for name in names:
        m = gens[name] @ m
    return m, " ".join(names)


@_timed("assoc")
def verify_assoc(samples: int = 100, seed: int = DEFAULT_SEED, max_entry: int = 6, engine: Engine | None = None) -> Report:
    e = _engine(engine)
    rep = Report("assoc")
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (_random_curve(rng, max_entry) for _ in range(3))
        x, y, z = _c(*a), _c(*b), _c(*c)
        rep.check(("assoc", a, b, c), e.mul(e.mul(x, y), z) - e.mul(x, e.mul(y, z)))
    rep.notes["seed"] = seed
    rep.counters = e.cache.counters()
    return rep


@_timed("swap")
def verify_swap(
    samples: int = 100, seed: int = DEFAULT_SEED, max_entry: int = 6, max_det: int = 8, engine: Engine | None = None
) -> Report:
    """``b * a`` equals ``a * b`` with ``A`` inverted."""
    e = _engine(engine)
    rep = Report("swap")
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = _random_pair(rng, max_entry, max_det)
        rep.check(("swap", a, b), e.mul_basis(b, a) - e.mul_basis(a, b).invert_A())
    rep.notes["seed"] = seed
    rep.counters = e.cache.counters()
    return rep


@_timed("equivariance")
def verify_equivariance(
    samples: int = 100, seed: int = DEFAULT_SEED, max_entry: int = 6, max_det: int = 8, engine: Engine | None = None
) -> Report:
    """``M(a) * M(b)`` equals ``M(a * b)`` for s1, s2, their inverses and random words."""
    e = _engine(engine)
    rep = Report("equivariance")
    rng = random.Random(seed)
    fixed = {"s1": S1, "s2": S2, "s1'": S1.inverse(), "s2'": S2.inverse()}
    for _ in range(samples):
        a, b = _random_pair(rng, max_entry, max_det)
        word, label = _random_word(rng, rng.randint(2, 6))
        mats = dict(fixed, **{f"word[{label}]": word})
        prod = e.mul_basis(a, b)
        for name, m in mats.items():
            lhs = e.mul_basis(m.act(a), m.act(b))
            rep.check((name, a, b), lhs - apply_matrix(prod, m))
    rep.notes["seed"] = seed
    rep.counters = e.cache.counters()
    return rep


def verify_assoc_swap_equivariance(
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    max_entry: int = 6,
    max_det: int = 8,
    engine: Engine | None = None,
) -> Report:
    e = _engine(engine)
    rep = Report("assoc_swap_equivariance")
    rep.merge(verify_assoc(samples, seed, max_entry, engine=e))
    rep.merge(verify_swap(samples, seed, max_entry, max_det, engine=e))
    rep.merge(verify_equivariance(samples, seed, max_entry, max_det, engine=e))
    rep.counters = e.cache.counters()
    return rep


# --------------------------------------------------------------------------
# positivity


def positivity_representatives(maxdet: int, primitive_only: bool = False) -> list[tuple[Curve, Curve]]:
    """One ordered pair ``((d,n), (0,k))`` per orbit with ``0 < det = dk <= maxdet``.

    Determinant-one matrices permute the R variables and fix ``A`` and ``y``;
    swapping the factors inverts ``A``.  Neither changes the sign of a
    coefficient, so these representatives cover every pair.
    """
    reps = []
    for d in range(1, maxdet + 1):
        for k in range(1, maxdet // d + 1):
            if primitive_only and k != 1:
                continue
            for n in range(d):
                if primitive_only and gcd(d, n) != 1:
                    continue
                reps.append((Curve(d, n), Curve(0, k)))
    return reps


@_timed("positivity")
def positivity_scan(maxdet: int = 12, engine: Engine | None = None, primitive_only: bool = False) -> Report:
    """Sign check of T-basis structure constants.

    Part 1: every T-basis coefficient of ``a_T * b_T`` is a nonnegative
    polynomial.  Part 2: after removing ``A^{2det}(a+b)_T + A^{-2det}(a-b)_T``
    the remainder's S-basis coefficients are nonnegative.  Violations are
    collected, never raised.
    """
    if maxdet < 1:
        raise ValueError("maxdet must be >= 1")
    e = _engine(engine)
    rep = Report("positivity")
    part1 = part2 = 0
    for a, b in positivity_representatives(maxdet, primitive_only):
        det = pair_det(a, b)
        prod = e.mul(decorated(a, "T"), decorated(b, "T"))
        for c, k in to_basis(prod, "T").items():
            if not is_nonneg(k):
                part1 += 1
                rep.failures.append({"case": _jsonable(["part1", a, b, c]), "coefficient": str(k)})
        rem = prod - _leading(a, b, det, "T")
        for c, k in to_basis(rem, "S").items():
            if not is_nonneg(k):
                part2 += 1
                rep.failures.append({"case": _jsonable(["part2", a, b, c]), "coefficient": str(k)})
        rep.cases += 1
    rep.notes.update({"maxdet": maxdet, "part1_violations": part1, "part2_violations": part2})
    rep.counters = e.cache.counters()
    return rep


# --------------------------------------------------------------------------
# benchmark


def fibonacci_slopes(maxd: int) -> list[Curve]:
    """``(F_{k+1}, F_k)``: the slopes with the longest continued fractions."""
    out = []
    a, b = 1, 2
    while b <= maxd:
        out.append(Curve(b, a))
        a, b = b, a + b
    return out


def bench(maxd: int = 40, shared_cache: bool = False) -> tuple[list[dict[str, int]], dict[str, Any]]:
    """Time ``(d,n)*(0,1)`` for every reduced ``0 <= n < d <= maxd``.

    Each product gets a fresh engine unless ``shared_cache`` is set, so the
    counters measure the work of one product.  Returns the rows and a
    summary with a least-squares log-log slope of calls against det and the
    calls along the Fibonacci slopes.
    """
    if maxd < 2:
        raise ValueError("maxd must be >= 2")
    rows = []
    shared = Engine() if shared_cache else None
    per_curve = {}
    for d in range(1, maxd + 1):
        for n in range(d):
            if gcd(d, n) != 1:
                continue
            e = shared or Engine()
            before = e.cache.counters()
            t0 = time.perf_counter()
            prod = e.mul_basis((d, n), (0, 1))
            micros = int((time.perf_counter() - t0) * 1e6)
            after = e.cache.counters()
            row = {
                "det": d,
                "calls": after["calls"] - before["calls"],
                "cache_hits": after["cache_hits"] - before["cache_hits"],
                "terms": sum(len(k.flat) for k in prod.terms.values()),
                "micros": micros,
            }
            rows.append(row)
            per_curve[(d, n)] = row
    pts = [(math.log(r["det"]), math.log(r["calls"])) for r in rows if r["det"] > 1]
    slope = None
    if len(pts) >= 2:
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        sxx = sum((p[0] - mx) ** 2 for p in pts)
        slope = sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx if sxx else None
    fib = [{"d": c.d, "n": c.n, "calls": per_curve[c]["calls"]} for c in fibonacci_slopes(maxd)]
    calls = [f["calls"] for f in fib]
    summary = {
        "products": len(rows),
        "loglog_slope_calls_vs_det": slope,
        "fibonacci_calls": fib,
        "fibonacci_nondecreasing": all(x <= y for x, y in zip(calls, calls[1:])),
        "max_calls": max(r["calls"] for r in rows),
    }
    return rows, summary


def bench_csv(rows: list[dict[str, int]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
