"""Exact sampling of Potts/Ising colorings by recursive vertex bisection.

Target distribution over colorings x of a finite graph:

    P(x) proportional to exp(-2 * beta * d(x))

where d(x) is the number of edges whose endpoints get different colors.
beta = 0 is uniform; larger beta favors agreement (ferromagnetic).

The stitching sampler colors the two halves of a vertex bisection
recursively and accepts the merge with probability
exp(-2 * beta * c) where c counts the crossing edges whose endpoints
disagree; on rejection both halves are redrawn.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from time import perf_counter
from typing import Optional, Sequence

import numpy as np

from .strauss import SampleStats, SampleTimeout, _Deadline
from .streams import RngStream, node_tag

# Enumeration guard: exact_ising_distribution refuses larger state spaces.
MAX_ENUMERATION_STATES = 1_000_000


@dataclass(frozen=True)
class IsingInstance:
    """A Potts model: vertex count, undirected edge list, q colors, beta.

    Edges are unordered distinct pairs without self-loops, endpoints in
    range(num_vertices).  beta >= 0 and q >= 2.
    """

    num_vertices: int
    edges: tuple
    q: int
    beta: float

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("num_vertices must be >= 1")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")
        norm = []
        seen = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))


def ising_weight(inst: IsingInstance, coloring: Sequence[int]) -> float:
    """Unnormalized weight exp(-2 * beta * d) of one coloring."""
    d = 0
    for u, v in inst.edges:
        if coloring[u] != coloring[v]:
            d += 1
    return math.exp(-2.0 * inst.beta * d)


def bisect_vertices(vertices: Sequence[int]) -> tuple[tuple, tuple]:
    """Split vertex ids into sorted halves; the first half gets the extra
    vertex when the count is odd."""
    ordered = sorted(vertices)
    k = (len(ordered) + 1) // 2
    return tuple(ordered[:k]), tuple(ordered[k:])


class _PlanNode:
    """One node of the precomputed bisection tree."""

    __slots__ = ("vertex", "low", "high", "cross_edges")

    def __init__(self, vertex, low, high, cross_edges):
        self.vertex = vertex
        self.low = low
        self.high = high
        self.cross_edges = cross_edges


def _build_plan(vertices: tuple, edges: tuple) -> _PlanNode:
    if len(vertices) == 1:
        return _PlanNode(vertices[0], None, None, ())
    low_ids, high_ids = bisect_vertices(vertices)
    low_set = set(low_ids)
    high_set = set(high_ids)
    cross = []
    low_edges = []
    high_edges = []
    for u, v in edges:
        if u in low_set and v in low_set:
            low_edges.append((u, v))
        elif u in high_set and v in high_set:
            high_edges.append((u, v))
        else:
            cross.append((u, v))
    return _PlanNode(None,
                     _build_plan(low_ids, tuple(low_edges)),
                     _build_plan(high_ids, tuple(high_edges)),
                     tuple(cross))


@lru_cache(maxsize=32)
def _plan_for(inst: IsingInstance) -> _PlanNode:
    return _build_plan(tuple(range(inst.num_vertices)), inst.edges)


def ising_stitch(inst: IsingInstance, stream: RngStream,
                 timeout_secs: Optional[float] = None
                 ) -> tuple[np.ndarray, SampleStats]:
    """Exact sampler; returns (coloring, stats).

    Leaves draw a uniform color; internal nodes stitch their halves with
    acceptance probability exp(-2 * beta * c) over the crossing edges c
    that disagree, retrying with substreams keyed by (depth, side, retry).
    """
    plan = _plan_for(inst)
    stats = SampleStats()
    t0 = perf_counter()
    deadline = _Deadline(t0, timeout_secs)
    coloring = np.zeros(inst.num_vertices, dtype=np.int64)
    q = inst.q
    beta = inst.beta

    def sample_node(node: _PlanNode, depth: int, node_stream: RngStream):
        if depth > stats.max_recursion_depth:
            stats.max_recursion_depth = depth
        if node.low is None:
            stats.base_case_calls += 1
            stats.proposals += 1
            coloring[node.vertex] = node_stream.randint_below(q)
            return
        retry = 0
        while True:
            deadline.check(stats)
            sample_node(node.low, depth + 1,
                        node_stream.child(node_tag(depth, 0, retry)))
            sample_node(node.high, depth + 1,
                        node_stream.child(node_tag(depth, 1, retry)))
            c = 0
            for u, v in node.cross_edges:
                if coloring[u] != coloring[v]:
                    c += 1
            stats.accept_checks += 1
            if node_stream.uniform01() < math.exp(-2.0 * beta * c):
                return
            retry += 1

    sample_node(plan, 0, stream)
    stats.wall_time = perf_counter() - t0
    return coloring, stats


def exact_ising_distribution(inst: IsingInstance) -> np.ndarray:
    """Probability of every coloring by full enumeration.

    Colorings are indexed in base q with vertex 0 as the most significant
    digit.  Refuses state spaces larger than MAX_ENUMERATION_STATES.
    """
    total = inst.q ** inst.num_vertices
    if total > MAX_ENUMERATION_STATES:
        raise ValueError(f"state space {total} exceeds enumeration limit "
                         f"{MAX_ENUMERATION_STATES}")
    n = inst.num_vertices
    idx = np.arange(total, dtype=np.int64)
    d = np.zeros(total, dtype=np.int64)
    for u, v in inst.edges:
        cu = (idx // inst.q ** (n - 1 - u)) % inst.q
        cv = (idx // inst.q ** (n - 1 - v)) % inst.q
        d += cu != cv
    w = np.exp(-2.0 * inst.beta * d)
    return w / w.sum()


def coloring_index(inst: IsingInstance, coloring: Sequence[int]) -> int:
    """Index of a coloring under the enumeration order above."""
    idx = 0
    for v in range(inst.num_vertices):
        idx = idx * inst.q + int(coloring[v])
    return idx
