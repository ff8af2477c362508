"""Strauss sampler behavior: parameter validation, counter semantics,
support invariants, the split-once cost identity, and determinism.

Distributional equivalence across samplers at scale lives in
test_acceptance.py; these tests stay cheap.
"""

import numpy as np
import pytest

from stitchsampler.geometry import (PointSet, Rect, count_close_pairs,
                                    split_region, unit_square)
from stitchsampler.strauss import (SampleTimeout, StraussParams, ar_strauss,
                                   prs_strauss, sample_ppp,
                                   split_once_strauss, stitch_strauss,
                                   strauss_penalty)
from stitchsampler.streams import RngStream
from stitchsampler.verify import strauss_count_oracle


def test_params_validation():
    region = unit_square()
    with pytest.raises(ValueError):
        StraussParams(region, -1.0, 0.5, 0.1)
    with pytest.raises(ValueError):
        StraussParams(region, 1.0, 1.5, 0.1)
    with pytest.raises(ValueError):
        StraussParams(region, 1.0, -0.1, 0.1)
    with pytest.raises(ValueError):
        StraussParams(region, 1.0, 0.5, 0.0)
    # lam = 0 is the documented degenerate case.
    StraussParams(region, 0.0, 0.5, 0.1)


def test_penalty_examples():
    # Three collinear points 0.25 apart: two adjacent pairs within 0.3.
    ps = PointSet.from_points([(0.0, 0.5), (0.25, 0.5), (0.5, 0.5)])
    assert strauss_penalty(ps, 0.5, 0.3) == 0.25
    assert strauss_penalty(ps, 0.0, 0.3) == 0.0
    # No close pairs: gamma^0 = 1 even at gamma = 0.
    far = PointSet.from_points([(0.0, 0.0), (0.9, 0.9)])
    assert strauss_penalty(far, 0.0, 0.3) == 1.0
    assert strauss_penalty(PointSet.empty(), 0.0, 0.3) == 1.0


def test_sample_ppp_lam_zero_and_support():
    s = RngStream(1, 0)
    assert len(sample_ppp(unit_square(), 0.0, s)) == 0
    rect = Rect(1.0, 2.0, 3.0, 2.5)
    ps = sample_ppp(rect, 40.0, s)
    for x, y in ps:
        assert rect.contains(x, y)
    with pytest.raises(ValueError):
        sample_ppp(rect, -1.0, s)


def test_sample_ppp_count_mean():
    s = RngStream(2, 0)
    counts = [len(sample_ppp(unit_square(), 200.0, s)) for _ in range(2000)]
    mean = float(np.mean(counts))
    se = (200.0 / 2000) ** 0.5
    assert abs(mean - 200.0) < 4 * se


def test_ar_gamma_one_accepts_first_proposal():
    params = StraussParams(unit_square(), 15.0, 1.0, 0.1)
    ps, st = ar_strauss(params, RngStream(3, 0))
    assert st.proposals == 1 and st.accept_checks == 1
    assert st.base_case_calls == 0 and st.max_recursion_depth == 0


def test_ar_hardcore_support():
    params = StraussParams(unit_square(), 10.0, 0.0, 0.1)
    s = RngStream(4, 0)
    for i in range(1000):
        ps, _ = ar_strauss(params, s.child(i))
        assert count_close_pairs(ps, 0.1) == 0


def test_stitch_gamma_one_counters_frozen():
    # lam=20 on the unit square with threshold 5 recurses to depth 2
    # (quarters have mean 5); at gamma=1 every test accepts, so the tree
    # shape is deterministic: 4 leaves, 3 stitch tests, 4 proposals.
    params = StraussParams(unit_square(), 20.0, 1.0, 0.15)
    ps, st = stitch_strauss(params, RngStream(5, 0))
    assert st.proposals == 4
    assert st.accept_checks == 3
    assert st.base_case_calls == 4
    assert st.max_recursion_depth == 2


def test_stitch_base_case_delegates_to_ar():
    params = StraussParams(unit_square(), 3.0, 0.5, 0.3)
    ps, st = stitch_strauss(params, RngStream(6, 0))
    assert st.base_case_calls == 1
    assert st.accept_checks == 0
    assert st.max_recursion_depth == 0
    assert st.proposals >= 1


def test_stitch_hardcore_support():
    params = StraussParams(unit_square(), 30.0, 0.0, 0.1)
    s = RngStream(7, 0)
    for i in range(500):
        ps, _ = stitch_strauss(params, s.child(i))
        assert count_close_pairs(ps, 0.1) == 0
        for x, y in ps:
            assert unit_square().contains(x, y)


def test_stitch_respects_base_threshold_knob():
    params = StraussParams(unit_square(), 3.0, 0.5, 0.3)
    _, st = stitch_strauss(params, RngStream(8, 0), base_threshold=0.75)
    assert st.max_recursion_depth == 2
    assert st.base_case_calls >= 4


def test_split_once_gamma_one_counters():
    params = StraussParams(unit_square(), 12.0, 1.0, 0.15)
    _, st = split_once_strauss(params, RngStream(9, 0))
    assert st.proposals == 2 and st.accept_checks == 1
    assert st.base_case_calls == 2 and st.max_recursion_depth == 1


def test_split_once_cost_formula():
    # Expected proposals factor as (1/p1 + 1/p2) * (1/p3): estimate the
    # halves' acceptance rates from standalone AR runs and the stitch
    # rate from the split sampler's own checks.
    params = StraussParams(unit_square(), 6.0, 0.5, 0.3)
    runs = 20_000
    s = RngStream(77, 0)
    tot_prop = 0
    tot_checks = 0
    for i in range(runs):
        _, st = split_once_strauss(params, s.child(i))
        tot_prop += st.proposals
        tot_checks += st.accept_checks
    mean_prop = tot_prop / runs
    inv_p3 = tot_checks / runs

    low, high = split_region(unit_square())
    sh = RngStream(78, 0)
    inv_p1 = np.mean([ar_strauss(StraussParams(low, 6.0, 0.5, 0.3),
                                 sh.child(i))[1].proposals
                      for i in range(runs)])
    sh2 = RngStream(79, 0)
    inv_p2 = np.mean([ar_strauss(StraussParams(high, 6.0, 0.5, 0.3),
                                 sh2.child(i))[1].proposals
                      for i in range(runs)])
    predicted = (inv_p1 + inv_p2) * inv_p3
    assert mean_prop == pytest.approx(predicted, rel=0.05)


def test_prs_lam_zero():
    params = StraussParams(unit_square(), 0.0, 0.0, 0.1)
    ps, st = prs_strauss(params, RngStream(10, 0))
    assert len(ps) == 0
    assert st.proposals == 1 and st.accept_checks == 0


def test_prs_gamma_one_returns_initial_ppp():
    params = StraussParams(unit_square(), 25.0, 1.0, 0.1)
    ps, st = prs_strauss(params, RngStream(11, 0))
    want = sample_ppp(unit_square(), 25.0, RngStream(11, 0))
    assert np.array_equal(ps.xs, want.xs) and np.array_equal(ps.ys, want.ys)
    assert st.proposals == 1 and st.accept_checks == 0


def test_prs_hardcore_support():
    params = StraussParams(unit_square(), 30.0, 0.0, 0.1)
    s = RngStream(12, 0)
    for i in range(500):
        ps, _ = prs_strauss(params, s.child(i))
        assert count_close_pairs(ps, 0.1) == 0


def test_effort_ordering_at_lam_50():
    # Mean stitch proposals versus plain AR's expectation at lam=50,
    # gamma=0, r=0.1.  AR's proposal count is geometric with mean 1/Z, so
    # 1/z_hat from the oracle stands in for the (infeasible) direct AR
    # measurement; the geometric identity itself is validated at feasible
    # parameters by the geometric-trials suite.
    params = StraussParams(unit_square(), 50.0, 0.0, 0.1)
    oracle = strauss_count_oracle(params, 10_000, RngStream(13, 0))
    ar_mean_proposals = 1.0 / oracle.z_hat
    s = RngStream(14, 0)
    tot = 0
    draws = 300
    for i in range(draws):
        _, st = stitch_strauss(params, s.child(i))
        tot += st.proposals
    stitch_mean = tot / draws
    assert stitch_mean < ar_mean_proposals
    # The gap is astronomical, not marginal.
    assert stitch_mean * 10 < ar_mean_proposals


def test_timeout_raises_with_partial_stats():
    params = StraussParams(unit_square(), 50.0, 0.0, 0.1)
    with pytest.raises(SampleTimeout) as info:
        ar_strauss(params, RngStream(15, 0), timeout_secs=0.05)
    assert info.value.stats.proposals >= 1
    assert info.value.stats.wall_time > 0.0


def test_stitch_determinism_including_stats():
    params = StraussParams(unit_square(), 30.0, 0.5, 0.1)
    a, sa = stitch_strauss(params, RngStream(42, 0))
    b, sb = stitch_strauss(params, RngStream(42, 0))
    assert np.array_equal(a.xs, b.xs) and np.array_equal(a.ys, b.ys)
    assert (sa.proposals, sa.accept_checks, sa.base_case_calls,
            sa.max_recursion_depth) == \
           (sb.proposals, sb.accept_checks, sb.base_case_calls,
            sb.max_recursion_depth)


def test_prs_determinism():
    params = StraussParams(unit_square(), 40.0, 0.0, 0.12)
    a, sa = prs_strauss(params, RngStream(43, 0))
    b, sb = prs_strauss(params, RngStream(43, 0))
    assert np.array_equal(a.xs, b.xs) and np.array_equal(a.ys, b.ys)
    assert sa.proposals == sb.proposals


def test_all_samplers_handle_lam_zero():
    params = StraussParams(unit_square(), 0.0, 0.5, 0.1)
    for f in (ar_strauss, stitch_strauss, split_once_strauss, prs_strauss):
        ps, st = f(params, RngStream(44, 0))
        assert len(ps) == 0
        assert st.proposals >= 1
