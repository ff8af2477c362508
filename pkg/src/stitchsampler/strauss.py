"""Exact samplers for the Strauss process on a rectangle.

The target density (relative to a unit-rate-per-area Poisson process
with intensity lam) is gamma ** c_r(X), where c_r counts unordered point
pairs at distance <= r.  gamma = 1 is the Poisson process itself,
gamma = 0 the hard-core process (0 ** 0 = 1).

Four samplers, all exact for gamma in [0, 1] except where noted:

* ar_strauss:         plain acceptance-rejection from the Poisson proposal.
* split_once_strauss: one spatial split, AR on each half, then a single
                      stitching acceptance test on the cross pairs.
* stitch_strauss:     recursive splitting down to small subregions; each
                      node retries until its halves stitch together.
* prs_strauss:        partial rejection sampling; exact for gamma = 0,
                      experimental for 0 < gamma < 1.

Acceptance tests compare a uniform U in [0, 1) strictly against the
penalty: U has an atom at exactly 0, so `U <= penalty` would accept a
violating hard-core configuration once every 2**53 checks.  Strict `<`
has the right law at both endpoints.

Internally the samplers carry bare coordinate arrays and only wrap the
accepted configuration in a PointSet on return.
"""

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .geometry import PointSet, Rect, split_cut, split_region
from .streams import RngStream, node_tag


@dataclass(frozen=True)
class StraussParams:
    """Model parameters: region, intensity lam >= 0, interaction gamma in
    [0, 1], interaction radius r > 0.

    lam = 0 is allowed as a degenerate case (the empty configuration).
    """

    region: Rect
    lam: float
    gamma: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise ValueError(f"lam must be finite and >= 0, got {self.lam!r}")
        if not (math.isfinite(self.gamma) and 0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValueError(f"r must be finite and > 0, got {self.r!r}")


@dataclass
class SampleStats:
    """Work counters attached to every draw.

    proposals            number of point-set proposals drawn from the
                         Poisson reference (for prs: initial draw plus one
                         per resampling round).
    accept_checks        acceptance tests at the calling sampler's own
                         level: AR tests for ar_strauss, stitching tests
                         for stitch/split_once (base-case AR tests are not
                         included), resampling rounds for prs.
    base_case_calls      AR delegations made by a recursive sampler.
    max_recursion_depth  deepest node visited (0 for flat samplers).
    wall_time            seconds spent inside the sampler call.
    """

    proposals: int = 0
    accept_checks: int = 0
    base_case_calls: int = 0
    max_recursion_depth: int = 0
    wall_time: float = 0.0


class SampleTimeout(RuntimeError):
    """Raised when a sampler exceeds its wall-clock budget.  Carries the
    partial counters accumulated so far."""

    def __init__(self, stats: SampleStats):
        super().__init__(f"sampling exceeded its time budget after "
                         f"{stats.proposals} proposals")
        self.stats = stats


class _Deadline:
    def __init__(self, start: float, timeout_secs: Optional[float]):
        self.start = start
        self.limit = None if timeout_secs is None else start + timeout_secs

    def check(self, stats: SampleStats):
        if self.limit is not None and time.perf_counter() > self.limit:
            stats.wall_time = time.perf_counter() - self.start
            raise SampleTimeout(stats)


def strauss_penalty(ps: PointSet, gamma: float, r: float) -> float:
    """gamma ** c_r(ps) with the 0 ** 0 = 1 convention."""
    return gamma ** int(kernels.close_pair_count(ps.xs, ps.ys, r))


def sample_ppp(region: Rect, lam: float, stream: RngStream) -> PointSet:
    """Poisson point process with intensity lam on region."""
    if not (math.isfinite(lam) and lam >= 0):
        raise ValueError(f"lam must be finite and >= 0, got {lam!r}")
    n = stream.poisson(lam * region.area)
    xs, ys = stream.uniform_points(region, n)
    return PointSet(xs, ys)


def _ar_loop(region: Rect, mean: float, gamma: float, r: float,
             stream: RngStream, stats: SampleStats, deadline: _Deadline,
             count_checks: bool):
    """Propose Poisson(mean) configurations on region until one passes
    U < gamma ** c.  Returns bare (xs, ys)."""
    count = kernels.close_pair_count
    while True:
        deadline.check(stats)
        stats.proposals += 1
        n = stream.poisson(mean)
        xs, ys = stream.uniform_points(region, n)
        if count_checks:
            stats.accept_checks += 1
        if stream.uniform01() < gamma ** int(count(xs, ys, r)):
            return xs, ys


def _cross_count(xs1, ys1, xs2, ys2, cut, r: float) -> int:
    """Cross pairs within r between two configurations separated by the
    cut line.  For larger sets, prefilter to the strips within r of the
    cut; any straddling pair within r has both endpoints in the strips,
    so the count is unchanged.  Tiny sets skip the mask overhead."""
    n1 = xs1.shape[0]
    n2 = xs2.shape[0]
    if n1 == 0 or n2 == 0:
        return 0
    if n1 * n2 > 256:
        if cut.axis == "x":
            m1 = np.abs(xs1 - cut.coord) <= r
            m2 = np.abs(xs2 - cut.coord) <= r
        else:
            m1 = np.abs(ys1 - cut.coord) <= r
            m2 = np.abs(ys2 - cut.coord) <= r
        xs1, ys1 = xs1[m1], ys1[m1]
        xs2, ys2 = xs2[m2], ys2[m2]
    return int(kernels.cross_pair_count(xs1, ys1, xs2, ys2, r))


def ar_strauss(params: StraussParams, stream: RngStream,
               timeout_secs: Optional[float] = None
               ) -> tuple[PointSet, SampleStats]:
    """Plain acceptance-rejection.  The number of proposals is geometric
    with success probability equal to the normalizing constant of the
    penalty under the Poisson proposal."""
    stats = SampleStats()
    t0 = time.perf_counter()
    deadline = _Deadline(t0, timeout_secs)
    xs, ys = _ar_loop(params.region, params.lam * params.region.area,
                      params.gamma, params.r, stream, stats, deadline,
                      count_checks=True)
    stats.wall_time = time.perf_counter() - t0
    return PointSet(xs, ys), stats


def stitch_strauss(params: StraussParams, stream: RngStream,
                   base_threshold: float = 5.0,
                   timeout_secs: Optional[float] = None
                   ) -> tuple[PointSet, SampleStats]:
    """Recursive stitching sampler.

    A node whose expected point count (lam * area) is at most
    base_threshold delegates to plain AR.  Otherwise the region is halved
    across its longer side; the halves are sampled recursively with
    substreams keyed by (depth, side, retry), their cross pairs within r
    are counted, and the union is accepted with probability
    gamma ** cross.  On rejection the whole node retries with fresh
    substreams.
    """
    stats = SampleStats()
    t0 = time.perf_counter()
    deadline = _Deadline(t0, timeout_secs)
    lam, gamma, r = params.lam, params.gamma, params.r

    def sample_node(region: Rect, depth: int, node_stream: RngStream):
        if depth > stats.max_recursion_depth:
            stats.max_recursion_depth = depth
        if lam * region.area <= base_threshold:
            stats.base_case_calls += 1
            return _ar_loop(region, lam * region.area, gamma, r, node_stream,
                            stats, deadline, count_checks=False)
        half_low, half_high = split_region(region)
        cut = split_cut(region)
        retry = 0
        while True:
            deadline.check(stats)
            xs1, ys1 = sample_node(half_low, depth + 1,
                                   node_stream.child(node_tag(depth, 0, retry)))
            xs2, ys2 = sample_node(half_high, depth + 1,
                                   node_stream.child(node_tag(depth, 1, retry)))
            cross = _cross_count(xs1, ys1, xs2, ys2, cut, r)
            stats.accept_checks += 1
            if node_stream.uniform01() < gamma ** cross:
                return np.concatenate([xs1, xs2]), np.concatenate([ys1, ys2])
            retry += 1

    xs, ys = sample_node(params.region, 0, stream)
    stats.wall_time = time.perf_counter() - t0
    return PointSet(xs, ys), stats


def split_once_strauss(params: StraussParams, stream: RngStream,
                       timeout_secs: Optional[float] = None
                       ) -> tuple[PointSet, SampleStats]:
    """Single split: AR on each half, one stitching test, retry on failure.

    Expected total proposals factor as (1/p1 + 1/p2) / p3 where p1, p2
    are the halves' AR acceptance rates and p3 the stitching rate.
    """
    stats = SampleStats()
    t0 = time.perf_counter()
    deadline = _Deadline(t0, timeout_secs)
    lam, gamma, r = params.lam, params.gamma, params.r
    half_low, half_high = split_region(params.region)
    cut = split_cut(params.region)
    stats.max_recursion_depth = 1
    retry = 0
    while True:
        deadline.check(stats)
        stats.base_case_calls += 2
        xs1, ys1 = _ar_loop(half_low, lam * half_low.area, gamma, r,
                            stream.child(node_tag(0, 0, retry)), stats,
                            deadline, count_checks=False)
        xs2, ys2 = _ar_loop(half_high, lam * half_high.area, gamma, r,
                            stream.child(node_tag(0, 1, retry)), stats,
                            deadline, count_checks=False)
        cross = _cross_count(xs1, ys1, xs2, ys2, cut, r)
        stats.accept_checks += 1
        if stream.uniform01() < gamma ** cross:
            break
        retry += 1
    ps = PointSet(np.concatenate([xs1, xs2]), np.concatenate([ys1, ys2]))
    stats.wall_time = time.perf_counter() - t0
    return ps, stats


def _close_pair_indices(xs: np.ndarray, ys: np.ndarray, r: float
                        ) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i < j) at distance <= r, in ascending (i, j) order."""
    n = xs.shape[0]
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    iu, ju = np.triu_indices(n, k=1)
    dx = xs[iu] - xs[ju]
    dy = ys[iu] - ys[ju]
    close = dx * dx + dy * dy <= r * r
    return iu[close], ju[close]


def prs_strauss(params: StraussParams, stream: RngStream,
                timeout_secs: Optional[float] = None
                ) -> tuple[PointSet, SampleStats]:
    """Partial rejection sampling.

    Draw one Poisson configuration, then repeat: flag bad pairs (every
    close pair when gamma = 0, otherwise each close pair independently
    fails a gamma-coin), remove exactly the endpoints of bad pairs, and
    replace them with the points of a fresh Poisson draw that land within
    r of a removed point.  Stops when no pair is bad.

    Exact for gamma = 0 (surviving points are never within r of anything
    retained or resampled).  For 0 < gamma < 1 this is an experimental
    heuristic with no exactness guarantee; gamma = 1 returns the initial
    Poisson draw unchanged.
    """
    stats = SampleStats()
    t0 = time.perf_counter()
    deadline = _Deadline(t0, timeout_secs)
    region, lam, gamma, r = params.region, params.lam, params.gamma, params.r
    mean = lam * region.area
    rr = r * r

    stats.proposals += 1
    n = stream.poisson(mean)
    xs, ys = stream.uniform_points(region, n)

    while True:
        if gamma == 0.0:
            bad_mask = kernels.close_neighbor_mask(xs, ys, r)
            any_bad = bool(bad_mask.any())
        elif gamma == 1.0:
            any_bad = False
        else:
            # One coin per close pair per round, in (i, j) order.
            iu, ju = _close_pair_indices(xs, ys, r)
            coins = stream.uniforms(iu.shape[0])
            fail = coins >= gamma
            bad_mask = np.zeros(xs.shape[0], dtype=bool)
            bad_mask[iu[fail]] = True
            bad_mask[ju[fail]] = True
            any_bad = bool(bad_mask.any())
        if not any_bad:
            break
        deadline.check(stats)
        stats.accept_checks += 1

        bad_xs = xs[bad_mask]
        bad_ys = ys[bad_mask]

        stats.proposals += 1
        m = stream.poisson(mean)
        fx, fy = stream.uniform_points(region, m)
        if m > 0:
            dx = fx[:, None] - bad_xs[None, :]
            dy = fy[:, None] - bad_ys[None, :]
            near = np.any(dx * dx + dy * dy <= rr, axis=1)
            fx, fy = fx[near], fy[near]
        xs = np.concatenate([xs[~bad_mask], fx])
        ys = np.concatenate([ys[~bad_mask], fy])

    stats.wall_time = time.perf_counter() - t0
    return PointSet(xs, ys), stats
