"""Command line front end: ``hypfan delaunay|fan|polyhedron|plot|euclid``.

Exit codes: 0 success, 2 usage or parse error, 3 domain precondition
violated, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .cones import delaunay_decomposition, margin_rows, dot
from .errors import HypfanError, NormalFanMismatch
from .euclid import configuration, euclid_secondary_polytope
from .fan import enumerate_fan, validate_fan
from .penner import as_weights, make_delaunay
from .polyhedron import check_normal_fan, secondary_polyhedron
from .svg import render

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _weights(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--weights: cannot parse {text!r}") from exc


def _check_len(w, d, flag: str) -> None:
    if len(w) != d.n_cusps:
        raise UsageError(f"{flag}: expected {d.n_cusps} values, got {len(w)}")


def _surface(arg: str):
    p = Path(arg)
    if not p.exists() and arg in io.EXAMPLES:
        return io.load_example(arg)
    if not p.exists():
        raise io.ParseError(f"{arg}: no such file or bundled example")
    return io.load_surface(p)


def _emit(doc: dict, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("HYPFAN_THREADS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"HYPFAN_THREADS: not an integer: {env!r}") from exc
    return 1


def cmd_delaunay(args) -> int:
    d = _surface(args.file)
    w = _weights(args.weights)
    _check_len(w, d, "--weights")
    w = as_weights(w, strict=True)
    D, log = make_delaunay(d, w)
    label = delaunay_decomposition(D, w)
    _emit({
        "schema": io.SCHEMA,
        "weights": [str(x) for x in w],
        "flip_log": log,
        "margins": [str(dot(row, w)) for row in margin_rows(D)],
        "decomposition": {
            "weak_edges": sorted(label.weak_edges),
            "is_triangulation": label.is_triangulation,
            "triangulation": io.surface_to_json(D),
        },
    }, args.out)
    return EXIT_OK


def cmd_fan(args) -> int:
    d = _surface(args.file)
    seed = _weights(args.seed) if args.seed else None
    if seed is not None:
        _check_len(seed, d, "--seed")
    fan = enumerate_fan(d, seed, args.rng_seed)
    validate_fan(fan)
    _emit(fan.to_json(), args.out)
    return EXIT_OK


def cmd_polyhedron(args) -> int:
    if not args.tail_tol > 0:
        raise UsageError("--tail-tol must be positive")
    d = _surface(args.file)
    fan = enumerate_fan(d, None, args.rng_seed)
    poly = secondary_polyhedron(d, fan, args.tail_tol, threads=_threads(args))
    report = check_normal_fan(poly, fan, tol=args.check_tol, raise_on_fail=False)
    doc = poly.to_json()
    doc["normal_fan"] = report.to_json()
    doc["hull_edges_agree"] = poly.hull_edges == poly.bounded_edges
    _emit(doc, args.out)
    if not report.passed:
        print(f"normal fan check failed: worst margin {report.worst_margin:.3g}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise io.ParseError(f"{args.file}: {exc}") from exc
    try:
        svg = render(doc)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, HypfanError):
            raise
        raise io.ParseError(f"{args.file}: not a fan or polyhedron document ({exc})") from exc
    Path(args.out).write_text(svg)
    return EXIT_OK


def cmd_euclid(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text())
        A = configuration(doc["points"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise io.ParseError(f"points: {exc}") from exc
    _emit(euclid_secondary_polytope(A).to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypfan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delaunay", help="flip to the Delaunay triangulation for given weights")
    s.add_argument("file", help="surface JSON file or bundled example name")
    s.add_argument("--weights", required=True, help="comma separated positive rationals")
    s.add_argument("--out")
    s.set_defaults(func=cmd_delaunay)

    s = sub.add_parser("fan", help="enumerate the secondary fan")
    s.add_argument("file")
    s.add_argument("--seed", help="starting weights (default all ones)")
    s.add_argument("--rng-seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_fan)

    s = sub.add_parser("polyhedron", help="GKZ vectors, hull and normal fan check")
    s.add_argument("file")
    s.add_argument("--tail-tol", type=float, default=1e-5)
    s.add_argument("--check-tol", type=float, default=1e-3)
    s.add_argument("--rng-seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=None,
                   help="worker threads for GKZ vectors (default: $HYPFAN_THREADS or 1)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_polyhedron)

    s = sub.add_parser("plot", help="draw a fan or polyhedron JSON as SVG")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("euclid", help="secondary polytope of a planar point configuration")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_euclid)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.ParseError) as exc:
        print(f"hypfan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NormalFanMismatch as exc:
        print(f"hypfan: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except HypfanError as exc:
        print(f"hypfan: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
