"""Command line interface.

Subcommands:

  sample   draw one Strauss configuration, write x,y CSV
  bench    sweep samplers over a lambda grid, write timing CSV
  ising    draw one Potts coloring for a graph given as an edge CSV
  verify   run a named verification suite, exit 0 iff it passes

Deterministic: the same flags and seed produce byte-identical output.
Stats go to stderr; data goes to the --out file (or stdout for verify).
"""

import argparse
import csv
import sys
from typing import Optional

from . import kernels
from .bench import METHODS, parse_grid, run_bench
from .geometry import Rect, count_close_pairs
from .ising import IsingInstance, ising_stitch
from .strauss import (SampleTimeout, StraussParams, ar_strauss, prs_strauss,
                      split_once_strauss, stitch_strauss)
from .streams import RngStream
from .suites import SUITE_NAMES, run_suite


def _stats_lines(method: str, stats) -> list[str]:
    return [
        f"method={method}",
        f"backend={kernels.backend_name()}",
        f"proposals={stats.proposals}",
        f"accept_checks={stats.accept_checks}",
        f"base_case_calls={stats.base_case_calls}",
        f"max_recursion_depth={stats.max_recursion_depth}",
        f"wall_time={stats.wall_time!r}",
    ]


def _cmd_sample(args) -> int:
    try:
        region = Rect(0.0, 0.0, args.width, args.height)
        params = StraussParams(region, args.lam, args.gamma, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stream = RngStream(args.seed, 0)
    if args.method == "prs" and 0.0 < args.gamma < 1.0:
        print("warning: prs with 0 < gamma < 1 is experimental and has no "
              "exactness guarantee", file=sys.stderr)
    runners = {
        "ar": lambda: ar_strauss(params, stream, timeout_secs=args.timeout_secs),
        "stitch": lambda: stitch_strauss(params, stream,
                                         base_threshold=args.base_threshold,
                                         timeout_secs=args.timeout_secs),
        "prs": lambda: prs_strauss(params, stream,
                                   timeout_secs=args.timeout_secs),
        "split_once": lambda: split_once_strauss(
            params, stream, timeout_secs=args.timeout_secs),
    }
    try:
        ps, stats = runners[args.method]()
    except SampleTimeout as exc:
        for line in _stats_lines(args.method, exc.stats):
            print(line, file=sys.stderr)
        print(f"error: timed out after {args.timeout_secs} s", file=sys.stderr)
        return 3
    with open(args.out, "w", newline="\n") as fh:
        fh.write("x,y\n")
        for x, y in zip(ps.xs.tolist(), ps.ys.tolist()):
            fh.write(f"{x!r},{y!r}\n")
    for line in _stats_lines(args.method, stats):
        print(line, file=sys.stderr)
    print(f"points={len(ps)}", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            print(f"error: unknown method {m!r}; choose from "
                  f"{', '.join(METHODS)}", file=sys.stderr)
            return 2
    if not methods:
        print("error: --methods is empty", file=sys.stderr)
        return 2
    try:
        lams = parse_grid(args.lambda_grid)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = run_bench(methods, lams, args.gamma, args.r, args.reps,
                     args.timeout_secs, args.seed, args.out,
                     base_threshold=args.base_threshold)
    print(f"wrote {rows} rows to {args.out}", file=sys.stderr)
    return 0


def _read_graph(path: str) -> list[tuple[int, int]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["u", "v"]:
            raise ValueError(f"graph file {path} must start with a 'u,v' header")
        edges = []
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            edges.append((int(row[0]), int(row[1])))
    return edges


def _cmd_ising(args) -> int:
    try:
        edges = _read_graph(args.graph)
        if not edges and args.num_vertices is None:
            raise ValueError("graph has no edges; pass --num-vertices")
        n = args.num_vertices
        if n is None:
            n = 1 + max(max(u, v) for u, v in edges)
        inst = IsingInstance(n, tuple(edges), args.q, args.beta)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stream = RngStream(args.seed, 0)
    coloring, stats = ising_stitch(inst, stream)
    with open(args.out, "w", newline="\n") as fh:
        fh.write("vertex,color\n")
        for v in range(inst.num_vertices):
            fh.write(f"{v},{int(coloring[v])}\n")
    for line in _stats_lines("ising_stitch", stats):
        print(line, file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    result = run_suite(args.suite, args.seed)
    out = sys.stdout
    out.write("n,prob_oracle,prob_empirical,stderr\n")
    for row in result.rows:
        out.write(f"{row.n},{row.prob_oracle!r},{row.prob_empirical!r},"
                  f"{row.stderr!r}\n")
    for line in result.details:
        print(line, file=sys.stderr)
    print(result.verdict_line())
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stitchsampler",
        description="Exact Strauss-process and Potts sampling via "
                    "acceptance-rejection stitching")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one Strauss configuration")
    p.add_argument("--method", required=True, choices=list(METHODS))
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="intensity of the Poisson reference")
    p.add_argument("--gamma", type=float, required=True,
                   help="interaction in [0, 1]; 0 is hard core")
    p.add_argument("--r", type=float, required=True, help="interaction radius")
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--height", type=float, default=1.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--base-threshold", type=float, default=5.0,
                   help="stitch delegates to AR when lambda*area <= this")
    p.add_argument("--timeout-secs", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bench", help="sweep samplers over a lambda grid")
    p.add_argument("--methods", required=True,
                   help="comma list from: " + ", ".join(METHODS))
    p.add_argument("--lambda-grid", default="5:200:5",
                   help="START:STOP:STEP, inclusive")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--r", type=float, default=0.15)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--timeout-secs", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0,
                   help="row seed is this plus the replicate index")
    p.add_argument("--base-threshold", type=float, default=5.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("ising", help="draw one Potts coloring")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--graph", required=True,
                   help="edge CSV with header u,v and 0-based vertex ids")
    p.add_argument("--num-vertices", type=int, default=None,
                   help="override the vertex count (default: max id + 1)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ising)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITE_NAMES))
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
