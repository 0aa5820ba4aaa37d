"""Command line interface: ``skein mul|verify|scan|bench|closed``.

Exit codes: 0 success, 2 bad input (parse error, unreadable cache), 3 contract
violation inside the engine, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cachefile import CacheFileError, load_cache, store_cache
from .coeffs import K0ClosureError
from .curves import Curve
from .element import decorated
from .engine import Engine, RecursionContractError, SpecializationError, closed_m0, closed_n1
from .parser import ParseError, parse_element
from .serialize import serialize_element, serialize_torus
from .torus import torus_verify_relations
from .verify import (
    DEFAULT_SEED,
    Report,
    bench,
    bench_csv,
    positivity_scan,
    verify_assoc_swap_equivariance,
    verify_bounds,
    verify_closed_forms,
    verify_long_relation,
    verify_relations,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONTRACT = 3
EXIT_VERIFY = 4

log = logging.getLogger("skein")


def _cmd_mul(args) -> int:
    engine = Engine()
    cache_path = Path(args.cache) if args.cache else None
    if cache_path and cache_path.exists():
        load_cache(cache_path, engine.cache)
        log.info("loaded %d cached products", len(engine.cache))
    x = parse_element(args.left, args.surface, engine)
    y = parse_element(args.right, args.surface, engine)
    if args.surface == "torus":
        if args.basis == "S":
            raise ParseError("torus output supports the mono and T bases", 0)
        out = serialize_torus(x * y, args.format, args.basis)
    else:
        out = serialize_element(engine.mul(x, y), args.format, args.basis)
    print(out)
    if cache_path:
        store_cache(engine.cache, cache_path)
    return EXIT_OK


def _torus_report() -> Report:
    rep = Report("torus")
    for name, residual in torus_verify_relations().items():
        rep.cases += 1
        rep.notes[name] = repr(residual)
        if not residual.is_zero():
            rep.failures.append({"case": name, "residual": repr(residual)})
    return rep


def _cmd_verify(args) -> int:
    seed = args.seed
    engine = Engine()
    suites = {
        "relations": lambda: verify_relations(engine),
        "long": lambda: verify_long_relation(engine),
        "bounds": lambda: verify_bounds(args.max_det or 25, args.samples or 200, seed, engine),
        "assoc": lambda: verify_assoc_swap_equivariance(args.samples or 100, seed, 6, args.max_det or 8, engine),
        "closed": lambda: verify_closed_forms(),
        "torus": _torus_report,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    reports = [suites[name]() for name in names]
    for rep in reports:
        log.info(rep.summary())
    print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def _cmd_scan(args) -> int:
    rep = positivity_scan(args.max_det, primitive_only=not args.all_pairs)
    Path(args.out).write_text(rep.to_json() + "\n", encoding="utf-8")
    print(rep.summary())
    print(json.dumps(rep.notes, sort_keys=True))
    return EXIT_VERIFY if (args.strict and not rep.ok) else EXIT_OK


def _cmd_bench(args) -> int:
    rows, summary = bench(args.max_d, shared_cache=args.shared_cache)
    Path(args.out).write_text(bench_csv(rows), encoding="utf-8")
    print(json.dumps(summary, sort_keys=True, indent=2))
    return EXIT_OK


def _cmd_closed(args) -> int:
    p = args.param
    if args.family == "m0":
        result = closed_m0(p)
    else:
        result = closed_n1(p)
    print(serialize_element(result, args.format, args.basis))
    if args.check:
        generic = Engine(use_closed_forms=False)
        if args.family == "m0":
            other = generic.mul(decorated(Curve(p, 0), "T"), decorated(Curve(0, 1), "plain"))
        else:
            other = generic.mul_basis((p, 1), (0, 1))
        same = other == result
        print("check: " + ("agrees with the generic recursion" if same else "DIFFERS from the generic recursion"))
        if not same:
            print("difference: " + serialize_element(result - other), file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skein", description="Exact products in Kauffman bracket skein algebras.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mul", help="multiply two expressions")
    m.add_argument("--surface", choices=("f04", "torus"), default="f04")
    m.add_argument("left")
    m.add_argument("right")
    m.add_argument("--basis", choices=("mono", "T", "S"), default="mono")
    m.add_argument("--format", choices=("text", "json", "latex"), default="text")
    m.add_argument("--cache", metavar="FILE", help="product cache to load and update")
    m.set_defaults(func=_cmd_mul)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=("relations", "long", "bounds", "assoc", "closed", "torus", "all"), default="all")
    v.add_argument("--max-det", type=int, default=None, help="bounds: largest d; assoc: largest |det| for swap/equivariance")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("scan", help="positivity scan of T-basis structure constants")
    s.add_argument("--max-det", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--all-pairs", action="store_true", help="include non-primitive pairs")
    s.add_argument("--strict", action="store_true", help="exit 4 if any violation is found")
    s.set_defaults(func=_cmd_scan)

    b = sub.add_parser("bench", help="time (d,n)*(0,1) for reduced n/d with d <= max-d")
    b.add_argument("--max-d", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--shared-cache", action="store_true", help="reuse one cache across all products")
    b.set_defaults(func=_cmd_bench)

    c = sub.add_parser("closed", help="closed formulas (m,0)_T*(0,1) and (n,1)*(0,1)")
    c.add_argument("--family", choices=("m0", "n1"), required=True)
    c.add_argument("--param", type=int, required=True)
    c.add_argument("--check", action="store_true", help="compare with the generic recursion")
    c.add_argument("--basis", choices=("mono", "T", "S"), default="mono")
    c.add_argument("--format", choices=("text", "json", "latex"), default="text")
    c.set_defaults(func=_cmd_closed)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ParseError, CacheFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (K0ClosureError, RecursionContractError, SpecializationError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
