"""Benchmark harness: run samplers over a lambda grid, record one CSV row
per (method, lambda, replicate), censor runs at the time budget.

The CSV is append-only and flushed after every row so partial grids
survive interruption.  Timing wraps the sampler call only; row seeds are
seed_base + replicate, so any single cell can be replayed with the
sample subcommand.
"""

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import Rect, unit_square
from .strauss import (SampleTimeout, StraussParams, ar_strauss, prs_strauss,
                      split_once_strauss, stitch_strauss)
from .streams import RngStream

CSV_HEADER = ("method,lambda,gamma,r,replicate,seed,seconds,"
              "proposals,accept_checks,timed_out")

METHODS = ("ar", "stitch", "prs", "split_once")


@dataclass(frozen=True)
class BenchRecord:
    method: str
    lam: float
    gamma: float
    r: float
    replicate: int
    seed: int
    seconds: float
    proposals: int
    accept_checks: int
    timed_out: bool

    def csv_row(self) -> str:
        return ",".join([
            self.method,
            repr(self.lam),
            repr(self.gamma),
            repr(self.r),
            str(self.replicate),
            str(self.seed),
            repr(self.seconds),
            str(self.proposals),
            str(self.accept_checks),
            "true" if self.timed_out else "false",
        ])


def _run_method(method: str, params: StraussParams, stream: RngStream,
                timeout_secs: Optional[float], base_threshold: float):
    if method == "ar":
        return ar_strauss(params, stream, timeout_secs=timeout_secs)
    if method == "stitch":
        return stitch_strauss(params, stream, base_threshold=base_threshold,
                              timeout_secs=timeout_secs)
    if method == "prs":
        return prs_strauss(params, stream, timeout_secs=timeout_secs)
    if method == "split_once":
        return split_once_strauss(params, stream, timeout_secs=timeout_secs)
    raise ValueError(f"unknown method {method!r}")


def run_cell(method: str, params: StraussParams, seed: int,
             timeout_secs: Optional[float], replicate: int,
             base_threshold: float = 5.0) -> BenchRecord:
    """One draw, timed around the sampler call only."""
    stream = RngStream(seed, 0)
    t0 = time.perf_counter()
    try:
        _, stats = _run_method(method, params, stream, timeout_secs,
                               base_threshold)
        seconds = time.perf_counter() - t0
        timed_out = False
    except SampleTimeout as exc:
        stats = exc.stats
        seconds = float(timeout_secs)
        timed_out = True
    return BenchRecord(method, params.lam, params.gamma, params.r, replicate,
                       seed, seconds, stats.proposals, stats.accept_checks,
                       timed_out)


def run_bench(methods: Sequence[str], lams: Sequence[float], gamma: float,
              r: float, reps: int, timeout_secs: Optional[float],
              seed_base: int, out_path, region: Optional[Rect] = None,
              base_threshold: float = 5.0,
              on_record: Optional[Callable[[BenchRecord], None]] = None
              ) -> int:
    """Full grid; returns the number of data rows written."""
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; expected one of "
                             f"{', '.join(METHODS)}")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    region = region if region is not None else unit_square()
    rows = 0
    with open(out_path, "w", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        fh.flush()
        for method in methods:
            for lam in lams:
                params = StraussParams(region, float(lam), gamma, r)
                for rep in range(reps):
                    rec = run_cell(method, params, seed_base + rep,
                                   timeout_secs, rep, base_threshold)
                    fh.write(rec.csv_row() + "\n")
                    fh.flush()
                    rows += 1
                    if on_record is not None:
                        on_record(rec)
    return rows


def parse_grid(spec: str) -> list[float]:
    """Parse START:STOP:STEP into an inclusive grid (tolerant of float
    roundoff at the upper end)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be START:STOP:STEP, got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {spec!r}")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-9 * max(1.0, abs(stop)):
            break
        values.append(v)
        k += 1
    return values


def log_time_slope(lams: Sequence[float], mean_seconds: Sequence[float]
                   ) -> float:
    """Least-squares slope of log(mean seconds) against lambda.

    The exponent of the effort growth curve; smaller is flatter.
    """
    x = np.asarray(lams, dtype=np.float64)
    y = np.log(np.asarray(mean_seconds, dtype=np.float64))
    if x.shape[0] < 2:
        raise ValueError("need at least two grid points for a slope")
    xc = x - x.mean()
    return float((xc * (y - y.mean())).sum() / (xc * xc).sum())
