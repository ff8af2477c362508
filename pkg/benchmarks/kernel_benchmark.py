"""Timing comparison between the compiled kernels and the numpy fallback.

Times each hot kernel on synthetic point sets at several sizes and
prints per-call figures for both backends side by side.  With
--end-to-end it also reruns itself in two subprocesses (one with
STITCHSAMPLER_PURE=1) so each backend is chosen at import time, and
reports full stitch sampling throughput plus a checksum proving the
two backends produce identical draws.

Usage:
    python3 benchmarks/kernel_benchmark.py
    python3 benchmarks/kernel_benchmark.py --sizes 64,1024 --end-to-end
"""

import argparse
import os
import statistics
import subprocess
import sys
import time
import timeit

import numpy as np

from stitchsampler import _pykernels

try:
    from stitchsampler import _ckernels
except ImportError:
    _ckernels = None


def per_call_seconds(fn, args, repeats: int) -> float:
    timer = timeit.Timer(lambda: fn(*args))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeats, loops)) / loops


def kernel_cases(sizes):
    rng = np.random.default_rng(12345)
    for n in sizes:
        xs = rng.random(n)
        ys = rng.random(n)
        half = n // 2
        yield ("close_pair_count", n, (xs, ys, 0.1))
        yield ("cross_pair_count", n,
               (xs[:half], ys[:half], xs[half:], ys[half:], 0.1))
        yield ("close_neighbor_mask", n, (xs, ys, 0.1))
        yield ("bits_block", n, (12345, 0, n))
    for n in (4, 16, 64):
        pts = rng.random((2, 2000, n))
        yield ("close_pair_counts_batch", n, (pts[0], pts[1], 0.1))


def run_kernel_table(sizes, repeats: int) -> None:
    have = _ckernels is not None
    if not have:
        print("compiled extension not installed; timing the fallback only",
              file=sys.stderr)
    header = f"{'kernel':<26}{'n':>6}{'python':>12}"
    if have:
        header += f"{'compiled':>12}{'speedup':>9}"
    print(header)
    for name, n, args in kernel_cases(sizes):
        py = per_call_seconds(getattr(_pykernels, name), args, repeats)
        line = f"{name:<26}{n:>6}{py:>12.3e}"
        if have:
            cc = per_call_seconds(getattr(_ckernels, name), args, repeats)
            line += f"{cc:>12.3e}{py / cc:>9.1f}"
        print(line)


def sample_loop(lam: float, reps: int) -> None:
    # Runs inside a subprocess so the backend choice in the environment
    # takes effect at import time.
    from stitchsampler import kernels
    from stitchsampler.geometry import unit_square
    from stitchsampler.strauss import StraussParams, stitch_strauss
    from stitchsampler.streams import RngStream

    params = StraussParams(unit_square(), lam, 0.0, 0.1)
    times = []
    checksum = 0.0
    points = 0
    for i in range(reps):
        stream = RngStream(7, i)
        t0 = time.perf_counter()
        pts, _ = stitch_strauss(params, stream)
        times.append(time.perf_counter() - t0)
        checksum += float(pts.xs.sum() + pts.ys.sum())
        points += len(pts.xs)
    print(f"{kernels.BACKEND} {statistics.median(times):.6f} "
          f"{points} {checksum:.12f}")


def run_end_to_end(lam: float, reps: int) -> None:
    print(f"\nend to end: stitch at lambda={lam:g}, gamma=0, r=0.1, "
          f"{reps} draws per backend")
    results = {}
    for pure in ("0", "1"):
        env = dict(os.environ, STITCHSAMPLER_PURE=pure)
        out = subprocess.run(
            [sys.executable, __file__, "--sample-loop",
             "--e2e-lambda", str(lam), "--e2e-reps", str(reps)],
            env=env, capture_output=True, text=True, check=True)
        backend, median, points, checksum = out.stdout.split()
        results[backend] = (float(median), points, checksum)
        print(f"  {backend:<9} median {float(median) * 1e3:8.2f} ms/draw")
    if len(results) == 2:
        py, cc = results["python"], results["compiled"]
        if (py[1], py[2]) != (cc[1], cc[2]):
            raise SystemExit("backends disagree on the sampled points")
        print(f"  identical draws from both backends "
              f"({py[1]} points total); speedup {py[0] / cc[0]:.1f}x")
    else:
        print("  compiled extension not installed; no comparison")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="16,64,256,1024,4096",
                        help="comma separated point counts for the kernels")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per measurement")
    parser.add_argument("--end-to-end", action="store_true",
                        help="also time full stitch sampling per backend")
    parser.add_argument("--e2e-lambda", type=float, default=80.0)
    parser.add_argument("--e2e-reps", type=int, default=100)
    parser.add_argument("--sample-loop", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args(argv)
    if args.sample_loop:
        sample_loop(args.e2e_lambda, args.e2e_reps)
        return 0
    sizes = [int(s) for s in args.sizes.split(",")]
    run_kernel_table(sizes, args.repeats)
    if args.end_to_end:
        run_end_to_end(args.e2e_lambda, args.e2e_reps)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
