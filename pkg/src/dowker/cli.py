"""Command-line front end: reduce, betti, gen, check.

Exit codes: 0 success, 1 parse/parameter error, 2 Betti mismatch under
--check-betti, 3 simplex enumeration size cap exceeded.  The environment
variable DOWKER_SIZE_CAP overrides the enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .collapse import collapse_core
from .complexio import (gen_simplex_boundary, gen_sphere_cube, gen_sphere_uv,
                        gen_torus_grid, parse_off, parse_toplex_file)
from .errors import ParseError, SizeCapError
from .homology import DEFAULT_SIZE_CAP, betti_gf2
from .reducer import format_step_log, reduce
from .relation import Relation

# all bundled datasets are surfaces, so homology stops at dimension 2
DEFAULT_MAX_DIM = 2


def _size_cap():
    cap = os.environ.get("DOWKER_SIZE_CAP")
    return int(cap) if cap else DEFAULT_SIZE_CAP


def _load_relation(path, fmt):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "rel":
        return Relation.from_text(text)
    if fmt == "toplex":
        return Relation.from_toplexes(parse_toplex_file(text))
    if fmt == "off":
        return Relation.from_toplexes(parse_off(text))
    raise ValueError(f"unknown format {fmt!r}")


def cmd_reduce(args):
    relation = _load_relation(args.input, args.format)
    relation = relation.make_column_irreducible()
    max_dim = args.max_dim if args.max_dim is not None else DEFAULT_MAX_DIM
    cap = _size_cap()
    betti_before = betti_after = None
    if args.check_betti:
        betti_before = betti_gf2(relation.toplexes(), max_dim, size_cap=cap)
    t0 = time.perf_counter()
    reduced, stats, reports = reduce(relation)
    elapsed = time.perf_counter() - t0
    if args.check_betti:
        betti_after = betti_gf2(reduced.toplexes(), max_dim, size_cap=cap)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(reduced.to_text())
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(format_step_log(reports))
    report = {
        "rows_before": stats.rows_before, "cols_before": stats.cols_before,
        "rows_after": stats.rows_after, "cols_after": stats.cols_after,
        "steps": stats.steps_applied, "tests": stats.contractibility_tests,
        "budget": stats.comparison_budget, "time_s": round(elapsed, 6),
    }
    if betti_before is not None:
        report["betti_before"] = list(betti_before)
        report["betti_after"] = list(betti_after)
        report["betti_preserved"] = betti_before == betti_after
    if args.json:
        print(json.dumps(report))
    else:
        print(f"input: {stats.rows_before} rows {stats.cols_before} cols")
        print(f"output: {stats.rows_after} rows {stats.cols_after} cols")
        print(f"steps: {stats.steps_applied}")
        print(f"tests: {stats.contractibility_tests}")
        print(f"budget: {stats.comparison_budget}")
        print(f"time: {elapsed:.3f}s")
        if betti_before is not None:
            print(f"betti-before: {' '.join(str(b) for b in betti_before)}")
            print(f"betti-after: {' '.join(str(b) for b in betti_after)}")
            print(f"betti: {'preserved' if betti_before == betti_after else 'CHANGED'}")
    if betti_before is not None and betti_before != betti_after:
        return 2
    return 0


def cmd_betti(args):
    relation = _load_relation(args.input, args.format)
    max_dim = args.max_dim if args.max_dim is not None else DEFAULT_MAX_DIM
    betti = betti_gf2(relation.toplexes(), max_dim, size_cap=_size_cap())
    print(" ".join(str(b) for b in betti))
    return 0


def cmd_check(args):
    relation = _load_relation(args.input, args.format)
    print(f"column-irreducible: {'yes' if relation.is_column_irreducible() else 'no'}")
    if relation.nrows == 0:
        print("strong-collapsible: no (empty)")
        return 0
    core = collapse_core(relation)
    verdict = "yes" if core.shape == (1, 1) else "no"
    print(f"strong-collapsible: {verdict} (core {core.nrows}x{core.ncols})")
    return 0


def cmd_gen(args):
    if args.shape == "sphere-cube":
        tops = gen_sphere_cube()
    elif args.shape == "sphere-uv":
        tops = gen_sphere_uv(args.slices, args.stacks)
    elif args.shape == "torus":
        tops = gen_torus_grid(args.m, args.n)
    elif args.shape == "simplex-boundary":
        tops = gen_simplex_boundary(args.n)
    else:
        raise ValueError(f"unknown shape {args.shape!r}")
    text = tops.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dowker",
        description="Reduce simplicial complexes stored as vertex/toplex relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, fmt_required):
        p.add_argument("--input", required=True, help="input file path")
        p.add_argument("--format", choices=["rel", "toplex", "off"],
                       required=fmt_required, default=None if fmt_required else "toplex",
                       help="input format")

    p = sub.add_parser("reduce", help="reduce a complex, preserving Betti numbers")
    add_input(p, fmt_required=True)
    p.add_argument("--output", help="write the reduced relation here (relation text format)")
    p.add_argument("--log", help="write the step log here")
    p.add_argument("--check-betti", action="store_true",
                   help="run the homology oracle before and after; exit 2 on mismatch")
    p.add_argument("--max-dim", type=int, default=None, help="homology dimension cap")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("betti", help="print mod-2 Betti numbers")
    add_input(p, fmt_required=False)
    p.add_argument("--max-dim", type=int, default=None, help="homology dimension cap")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("check", help="report column irreducibility and strong collapsibility")
    add_input(p, fmt_required=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a fixture as a toplex file")
    p.add_argument("shape", choices=["sphere-cube", "sphere-uv", "torus", "simplex-boundary"])
    p.add_argument("--slices", type=int, default=24)
    p.add_argument("--stacks", type=int, default=21)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
