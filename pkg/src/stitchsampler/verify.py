"""Independent verification tools.

The oracle estimates the point-count distribution of a Strauss process
without running any of the samplers: condition on the Poisson count n,
estimate the mean penalty E[gamma ** c_r] under n independent uniform
points by plain Monte Carlo, and reweight the Poisson terms.  Agreement
between samplers and this oracle is evidence for both, since the two
computations share no code path beyond the pair counter.

Also provides two-sample and goodness-of-fit chi-square helpers with
adjacent-cell pooling, total variation distance, and a quadrature oracle
for the two-point close probability.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import stats as sps

from . import kernels
from .geometry import PointSet
from .strauss import StraussParams
from .streams import RngStream

# Poisson tail cut for the stratification.  Tighter than the 1e-9 budget
# so the *normalized* truncation error stays below 1e-9 even after
# dividing by a normalizing constant well under 1.
_TAIL_CUT = 1e-12


@dataclass(frozen=True)
class CountDistribution:
    """Distribution of the number of points, truncated at n_max.

    probs[n] is P(N = n) for n = 0 .. n_max; the (unrepresented) mass
    above n_max is at most tail_mass_bound.
    """

    probs: np.ndarray
    n_max: int
    tail_mass_bound: float


@dataclass(frozen=True)
class OracleEstimate:
    """Oracle output: the count distribution, the normalizing constant
    z_hat = P(a Poisson proposal is accepted), per-entry delta-method
    standard errors for probs, and the z_hat standard error."""

    distribution: CountDistribution
    z_hat: float
    std_error: np.ndarray
    num_samples: int
    z_std_error: float = 0.0


@dataclass(frozen=True)
class ComparisonReport:
    statistic: float
    df: int
    p_value: float
    tv_distance: float
    pooled_cells: int


def strauss_count_oracle(params: StraussParams, num_samples: int,
                         stream: RngStream) -> OracleEstimate:
    """Stratified importance estimate of P(N = n) for the Strauss model.

    P(N = n) is proportional to Poisson(lam * area)(n) * w_n with
    w_n = E[gamma ** c_r(X) | n uniform points].  w_0 = w_1 = 1 exactly;
    larger strata use num_samples Monte Carlo draws each.  gamma = 1
    short-circuits to the exact Poisson law with z_hat = 1.
    """
    region, lam, gamma, r = params.region, params.lam, params.gamma, params.r
    mean = lam * region.area
    n_max = int(sps.poisson.isf(_TAIL_CUT, mean)) if mean > 0 else 1
    while sps.poisson.sf(n_max, mean) >= _TAIL_CUT:
        n_max += 1
    n_max = max(n_max, 1)
    pois = sps.poisson.pmf(np.arange(n_max + 1), mean)
    tail = float(sps.poisson.sf(n_max, mean))

    if gamma == 1.0:
        probs = pois / pois.sum()
        dist = CountDistribution(probs, n_max, tail)
        return OracleEstimate(dist, 1.0, np.zeros(n_max + 1), num_samples, 0.0)

    weights = np.ones(n_max + 1)
    sigma = np.zeros(n_max + 1)
    width = region.width
    height = region.height
    for n in range(2, n_max + 1):
        u = stream.uniforms(2 * n * num_samples)
        xs = region.x0 + width * u[: n * num_samples].reshape(num_samples, n)
        ys = region.y0 + height * u[n * num_samples:].reshape(num_samples, n)
        xs = np.ascontiguousarray(xs)
        ys = np.ascontiguousarray(ys)
        counts = kernels.close_pair_counts_batch(xs, ys, r)
        if gamma == 0.0:
            vals = (counts == 0).astype(np.float64)
        else:
            vals = gamma ** counts.astype(np.float64)
        weights[n] = vals.mean()
        sigma[n] = vals.std(ddof=1) / math.sqrt(num_samples)

    unnorm = pois * weights
    z_hat = float(unnorm.sum())
    probs = unnorm / z_hat

    # Delta method: probs_n = pois_n * w_n / z with the w_k estimated
    # independently, so d probs_n / d w_k = (delta_nk * pois_n
    # - probs_n * pois_k) / z.
    jac = (np.diag(pois) - np.outer(probs, pois)) / z_hat
    var = jac ** 2 @ sigma ** 2
    std_error = np.sqrt(var)
    z_std_error = float(math.sqrt(float((pois ** 2 * sigma ** 2).sum())))

    dist = CountDistribution(probs, n_max, tail / z_hat)
    return OracleEstimate(dist, z_hat, std_error, num_samples, z_std_error)


def empirical_count_distribution(draw: Callable[[RngStream], PointSet],
                                 runs: int, stream: RngStream
                                 ) -> CountDistribution:
    """Histogram of len(draw(substream)) over `runs` independent
    substreams child(0), child(1), ..."""
    counts = np.zeros(64, dtype=np.int64)
    for i in range(runs):
        n = len(draw(stream.child(i)))
        if n >= counts.shape[0]:
            grown = np.zeros(2 * (n + 1), dtype=np.int64)
            grown[: counts.shape[0]] = counts
            counts = grown
        counts[n] += 1
    n_max = int(np.max(np.nonzero(counts)[0])) if counts.any() else 0
    probs = counts[: n_max + 1] / runs
    return CountDistribution(probs, n_max, 0.0)


def point_counts(draw: Callable[[RngStream], PointSet], runs: int,
                 stream: RngStream) -> np.ndarray:
    """Raw point counts, one per run, on substreams child(0..runs-1)."""
    return np.array([len(draw(stream.child(i))) for i in range(runs)],
                    dtype=np.int64)


def tv_distance(a: CountDistribution, b: CountDistribution) -> float:
    """Total variation distance on the union support (no pooling)."""
    top = max(a.n_max, b.n_max)
    pa = np.zeros(top + 1)
    pb = np.zeros(top + 1)
    pa[: a.n_max + 1] = a.probs
    pb[: b.n_max + 1] = b.probs
    return 0.5 * float(np.abs(pa - pb).sum())


def _pool_cells(expected_list: list[np.ndarray], min_expected: float
                ) -> list[np.ndarray]:
    """Index groups of adjacent cells such that every expected-count
    array meets min_expected in every group; the tail remainder joins the
    last group."""
    k = expected_list[0].shape[0]
    groups = []
    start = 0
    acc = [0.0] * len(expected_list)
    for i in range(k):
        for t, e in enumerate(expected_list):
            acc[t] += float(e[i])
        if all(a >= min_expected for a in acc):
            groups.append(np.arange(start, i + 1))
            start = i + 1
            acc = [0.0] * len(expected_list)
    if start < k:
        if groups:
            groups[-1] = np.arange(groups[-1][0], k)
        else:
            groups.append(np.arange(0, k))
    return groups


def compare_distributions(a: CountDistribution, b: CountDistribution,
                          na: int, nb: int, min_expected: float = 5.0
                          ) -> ComparisonReport:
    """Two-sample chi-square homogeneity test on pooled count cells.

    Observed counts are reconstructed as probs * sample size.  Cells are
    pooled left to right until the pooled expected count (under the
    combined estimate) reaches min_expected for both samples.  Raises
    ValueError if pooling collapses everything into a single cell.
    """
    top = max(a.n_max, b.n_max)
    pa = np.zeros(top + 1)
    pb = np.zeros(top + 1)
    pa[: a.n_max + 1] = a.probs
    pb[: b.n_max + 1] = b.probs
    oa = pa * na
    ob = pb * nb
    pooled = (oa + ob) / (na + nb)
    ea = pooled * na
    eb = pooled * nb
    groups = _pool_cells([ea, eb], min_expected)
    if len(groups) < 2:
        raise ValueError("pooling left a single cell; the distributions are "
                         "too concentrated for a chi-square comparison")
    stat = 0.0
    for g in groups:
        goa, gob = oa[g].sum(), ob[g].sum()
        gea, geb = ea[g].sum(), eb[g].sum()
        stat += (goa - gea) ** 2 / gea + (gob - geb) ** 2 / geb
    df = len(groups) - 1
    p = float(sps.chi2.sf(stat, df))
    tv = 0.5 * float(np.abs(pa - pb).sum())
    return ComparisonReport(float(stat), df, p, tv, len(groups))


def gof_chi_square(observed: np.ndarray, expected_probs: np.ndarray,
                   min_expected: float = 5.0) -> tuple[float, int, float]:
    """One-sample chi-square against a fully specified distribution.

    observed: integer counts per cell; expected_probs must cover the same
    cells and sum to ~1.  Adjacent cells are pooled until the expected
    count reaches min_expected.  Returns (statistic, df, p_value).
    """
    n = int(observed.sum())
    expected = expected_probs * n
    groups = _pool_cells([expected], min_expected)
    if len(groups) < 2:
        raise ValueError("pooling left a single cell")
    stat = 0.0
    for g in groups:
        o = float(observed[g].sum())
        e = float(expected[g].sum())
        stat += (o - e) ** 2 / e
    df = len(groups) - 1
    return float(stat), df, float(sps.chi2.sf(stat, df))


def close_pair_probability_quadrature(r: float, cells: int = 200_000) -> float:
    """P(two independent uniform points in the unit square lie within r),
    by midpoint quadrature over the difference vector.

    The difference (dx, dy) has density (1 - |dx|)(1 - |dy|) on
    [-1, 1]^2; integrating the x-slice of the disk analytically leaves a
    1-D integral done numerically.  Requires 0 < r <= 1.
    """
    if not 0 < r <= 1:
        raise ValueError("quadrature oracle expects 0 < r <= 1")
    h = r / cells
    v = (np.arange(cells) + 0.5) * h
    s = np.sqrt(np.maximum(r * r - v * v, 0.0))
    s = np.minimum(s, 1.0)
    inner = s - 0.5 * s * s  # integral of (1 - u) du from 0 to s
    return float(4.0 * h * ((1.0 - v) * inner).sum())
