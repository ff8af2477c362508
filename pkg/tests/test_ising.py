"""Potts/Ising sampler: instance validation, exact enumeration, the
bisection plan, and sampled-versus-enumerated agreement."""

import math

import numpy as np
import pytest
from scipy import stats as sps

from stitchsampler.ising import (MAX_ENUMERATION_STATES, IsingInstance,
                                 bisect_vertices, coloring_index,
                                 exact_ising_distribution, ising_stitch,
                                 ising_weight)
from stitchsampler.streams import RngStream


def test_instance_validation():
    with pytest.raises(ValueError):
        IsingInstance(0, (), 2, 0.5)
    with pytest.raises(ValueError):
        IsingInstance(3, ((0, 0),), 2, 0.5)
    with pytest.raises(ValueError):
        IsingInstance(3, ((0, 3),), 2, 0.5)
    with pytest.raises(ValueError):
        IsingInstance(3, ((0, 1), (1, 0)), 2, 0.5)
    with pytest.raises(ValueError):
        IsingInstance(3, ((0, 1),), 1, 0.5)
    with pytest.raises(ValueError):
        IsingInstance(3, ((0, 1),), 2, -0.1)
    inst = IsingInstance(3, ((2, 1),), 2, 0.5)
    assert inst.edges == ((1, 2),)


def test_weight_examples():
    edge = IsingInstance(2, ((0, 1),), 2, 0.5)
    assert ising_weight(edge, [0, 0]) == 1.0
    assert ising_weight(edge, [0, 1]) == pytest.approx(math.exp(-1.0))
    triangle = IsingInstance(3, ((0, 1), (1, 2), (0, 2)), 3, 0.5)
    # All three colors distinct: every edge disagrees.
    assert ising_weight(triangle, [0, 1, 2]) == pytest.approx(math.exp(-3.0))
    assert ising_weight(triangle, [1, 1, 1]) == 1.0


def test_bisect_examples():
    assert bisect_vertices((0, 1, 2, 3)) == ((0, 1), (2, 3))
    assert bisect_vertices((4, 0, 2)) == ((0, 2), (4,))
    assert bisect_vertices((7,)) == ((7,), ())


def test_enumeration_single_vertex_uniform():
    inst = IsingInstance(1, (), 3, 0.7)
    probs = exact_ising_distribution(inst)
    assert np.allclose(probs, [1 / 3] * 3)


def test_enumeration_single_edge():
    inst = IsingInstance(2, ((0, 1),), 2, 0.5)
    probs = exact_ising_distribution(inst)
    # Z = 2 + 2 exp(-2 beta); agreeing states 00 and 11 carry weight 1.
    z = 2.0 + 2.0 * math.exp(-1.0)
    assert probs[0] == pytest.approx(1.0 / z)
    assert probs[3] == pytest.approx(1.0 / z)
    assert probs[1] == pytest.approx(math.exp(-1.0) / z)
    p_same = probs[0] + probs[3]
    assert p_same == pytest.approx(1.0 / (1.0 + math.exp(-1.0)))


def test_enumeration_beta_zero_uniform():
    inst = IsingInstance(3, ((0, 1), (1, 2)), 2, 0.0)
    probs = exact_ising_distribution(inst)
    assert np.allclose(probs, 1.0 / 8.0)


def test_enumeration_tree_partition_function():
    # For a tree with m edges, Z = q * (1 + (q-1) exp(-2 beta))^m.
    inst = IsingInstance(4, ((0, 1), (1, 2), (2, 3)), 2, 0.5)
    probs = exact_ising_distribution(inst)
    z = 2.0 * (1.0 + math.exp(-1.0)) ** 3
    # All-equal colorings have full weight 1/Z.
    assert probs[0] == pytest.approx(1.0 / z)
    assert probs[-1] == pytest.approx(1.0 / z)
    assert probs.sum() == pytest.approx(1.0)


def test_enumeration_refuses_large_state_space():
    n = 21  # 2^21 > 1e6
    assert 2 ** n > MAX_ENUMERATION_STATES
    inst = IsingInstance(n, ((0, 1),), 2, 0.1)
    with pytest.raises(ValueError):
        exact_ising_distribution(inst)


def test_coloring_index_base_q():
    inst = IsingInstance(4, (), 2, 0.0)
    assert coloring_index(inst, [1, 0, 1, 0]) == 10
    inst3 = IsingInstance(3, (), 3, 0.0)
    assert coloring_index(inst3, [2, 1, 0]) == 2 * 9 + 1 * 3


def test_stitch_counters_leaf_and_merge():
    inst = IsingInstance(2, ((0, 1),), 2, 0.0)
    coloring, st = ising_stitch(inst, RngStream(1, 0))
    # beta=0 accepts the first merge; two leaves, one stitch test.
    assert st.proposals == 2 and st.base_case_calls == 2
    assert st.accept_checks == 1 and st.max_recursion_depth == 1


def test_stitch_path4_gof():
    inst = IsingInstance(4, ((0, 1), (1, 2), (2, 3)), 2, 0.5)
    exact = exact_ising_distribution(inst)
    runs = 30_000
    stream = RngStream(2, 0)
    idx = np.zeros(runs, dtype=np.int64)
    for i in range(runs):
        coloring, _ = ising_stitch(inst, stream.child(i))
        idx[i] = coloring_index(inst, coloring)
    observed = np.bincount(idx, minlength=16)
    stat, p = sps.chisquare(observed, exact * runs)
    assert p > 1e-3


def test_stitch_q3_single_edge_gof():
    inst = IsingInstance(2, ((0, 1),), 3, 0.4)
    exact = exact_ising_distribution(inst)
    runs = 20_000
    stream = RngStream(3, 0)
    idx = np.zeros(runs, dtype=np.int64)
    for i in range(runs):
        coloring, _ = ising_stitch(inst, stream.child(i))
        idx[i] = coloring_index(inst, coloring)
    observed = np.bincount(idx, minlength=9)
    stat, p = sps.chisquare(observed, exact * runs)
    assert p > 1e-3


def test_stitch_determinism():
    inst = IsingInstance(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5)), 2, 0.8)
    a, sa = ising_stitch(inst, RngStream(4, 0))
    b, sb = ising_stitch(inst, RngStream(4, 0))
    assert np.array_equal(a, b)
    assert sa.proposals == sb.proposals
    assert sa.accept_checks == sb.accept_checks
