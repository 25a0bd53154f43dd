"""
Command line: statistics, the map and its inverse, exhaustive checks,
distribution tables and diagrams.

Machine output is JSON on stdout.  --pretty switches to plain text for
people.  Exit status is 0 on success, 1 when a check or a computation
fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .distribution import CACHE_ENV, CHECKS, cache_dir, cached_distribution, run_check
from .forward import InvariantViolation, phi, phi_trace
from .inverse import InconsistencyError, RoundTripError, phi_inverse, phi_inverse_trace
from .perm import (ENUMERATION_CAP, PermutationError, compact_form,
                   parse_permutation)
from .render import FORMATS, render
from .stats import STATISTICS, VECTORS

FAILURES = (InvariantViolation, InconsistencyError, RoundTripError)


def _permutation(text):
    try:
        return parse_permutation(text)
    except PermutationError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _size(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= n <= ENUMERATION_CAP:
        raise argparse.ArgumentTypeError(f"n must be in [1, {ENUMERATION_CAP}]")
    return n


def _choices(allowed):
    def parse(text):
        items = [s.strip() for s in text.split(",") if s.strip()]
        bad = [s for s in items if s not in allowed]
        if bad or not items:
            raise argparse.ArgumentTypeError(
                f"unknown {', '.join(bad) or 'empty list'}; choose from {', '.join(allowed)}")
        return items
    return parse


def _emit(doc, pretty_text: str | None, args):
    if args.pretty and pretty_text is not None:
        print(pretty_text)
    elif args.pretty:
        print(json.dumps(doc, indent=2))
    else:
        print(json.dumps(doc, separators=(",", ":")))


def _fail(message: str, **extra) -> int:
    print(json.dumps({"error": message, **extra}), file=sys.stderr)
    return 1


def cmd_stats(args) -> int:
    values = {name: STATISTICS[name](args.permutation) for name in args.stats}
    text = "\n".join(f"{k:>6}  {v}" for k, v in values.items())
    _emit(values, text, args)
    return 0


def cmd_map(args) -> int:
    p = args.permutation
    try:
        if args.trace:
            _emit(phi_trace(p), None, args)
        else:
            image = compact_form(phi(p))
            _emit(image, image, args)
    except FAILURES as err:
        return _fail(f"{type(err).__name__}: {err}", input=compact_form(p))
    return 0


def cmd_invert(args) -> int:
    t = args.permutation
    try:
        if args.trace:
            _emit(phi_inverse_trace(t, strict=args.strict), None, args)
        else:
            preimage = compact_form(phi_inverse(t, strict=args.strict))
            _emit(preimage, preimage, args)
    except FAILURES as err:
        return _fail(f"{type(err).__name__}: {err}", input=compact_form(t))
    return 0


def cmd_verify(args) -> int:
    results = [run_check(name, args.n, args.jobs) for name in args.check]
    ok = all(r.ok for r in results)
    doc = {"n": args.n, "ok": ok, "checks": [r.__dict__ for r in results]}
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name:<10} n={r.n}  {r.detail}"
             + (f"  counterexample {r.counterexample}" if r.counterexample else "")
             for r in results]
    _emit(doc, "\n".join(lines), args)
    return 0 if ok else 1


def cmd_distribution(args) -> int:
    poly = cached_distribution(args.n, args.vector, args.jobs)
    doc = poly.to_json(args.n, args.vector)
    if args.out:
        out = Path(args.out)
        if out.suffix == ".csv":
            poly.write_csv(out)
        else:
            out.write_text(json.dumps(doc) + "\n")
        _emit({"written": str(out), "terms": len(poly.terms), "total": poly.total()},
              f"{len(poly.terms)} terms written to {out}", args)
    else:
        text = "\n".join(f"{a:>3} {b:>3} {c:>3}  {v}" for a, b, c, v in poly.sorted_terms())
        _emit(doc, text, args)
    return 0


def cmd_render(args) -> int:
    document = render(args.permutation, args.kind, args.format)
    if args.out == "-":
        sys.stdout.write(document)
    else:
        Path(args.out).write_text(document)
        _emit({"written": args.out, "kind": args.kind, "format": args.format},
              f"{args.kind} diagram written to {args.out}", args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")

    parser = argparse.ArgumentParser(
        prog="qeuler", description=__doc__.strip().splitlines()[0],
        epilog=f"distribution tables are cached under ${CACHE_ENV} "
               f"(now {cache_dir()})")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    perm_help = "permutation as digits (n <= 9) or comma-separated"

    s = sub.add_parser("stats", parents=[common], help="statistics of one permutation")
    s.add_argument("permutation", type=_permutation, help=perm_help)
    s.add_argument("--stats", type=_choices(list(STATISTICS)), default=list(STATISTICS),
                   help="comma-separated: " + ",".join(STATISTICS))
    s.set_defaults(run=cmd_stats)

    s = sub.add_parser("map", parents=[common], help="apply the forward bijection")
    s.add_argument("permutation", type=_permutation, help=perm_help)
    s.add_argument("--trace", action="store_true", help="print every intermediate as JSON")
    s.set_defaults(run=cmd_map)

    s = sub.add_parser("invert", parents=[common], help="apply the inverse bijection")
    s.add_argument("permutation", type=_permutation, help=perm_help)
    s.add_argument("--trace", action="store_true", help="print the labelling steps as JSON")
    s.add_argument("--strict", action="store_true",
                   help="one pass with no backtracking; fails where a choice is ambiguous")
    s.set_defaults(run=cmd_invert)

    s = sub.add_parser("verify", parents=[common], help="exhaustive checks over S_n")
    s.add_argument("--n", type=_size, default=7, help=f"size, 1..{ENUMERATION_CAP} (default 7)")
    s.add_argument("--check", type=_choices(list(CHECKS)), default=list(CHECKS),
                   help="comma-separated: " + ",".join(CHECKS))
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("distribution", parents=[common],
                       help="joint distribution of a statistic vector over S_n")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--vector", type=str.upper, choices=list(VECTORS), required=True,
                   metavar="{lhs,rhs,hl}")
    s.add_argument("--out", help="write JSON, or CSV when the name ends in .csv")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.set_defaults(run=cmd_distribution)

    s = sub.add_parser("render", parents=[common], help="draw a linear or planar diagram")
    s.add_argument("permutation", type=_permutation, help=perm_help)
    s.add_argument("--kind", choices=("linear", "planar"), required=True)
    s.add_argument("--format", choices=FORMATS, required=True)
    s.add_argument("--out", required=True, help="output file, or - for stdout")
    s.set_defaults(run=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())
