"""Planar primitives: points, axis-aligned rectangles, pair counting.

Distance comparisons are closed (<= r), matching the density definition
used by the samplers.  Pairing is index based, so coincident points do
form a close pair.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import kernels


class Point(NamedTuple):
    x: float
    y: float


class CutLine(NamedTuple):
    """A splitting line: axis is 'x' for a vertical cut at x=coord,
    'y' for a horizontal cut at y=coord."""
    axis: str
    coord: float


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle [x0, x1] x [y0, y1] with positive area."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        for v in (self.x0, self.y0, self.x1, self.y1):
            if not math.isfinite(v):
                raise ValueError("rectangle coordinates must be finite")
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("rectangle must have positive width and height")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


def unit_square() -> Rect:
    return Rect(0.0, 0.0, 1.0, 1.0)


@dataclass(frozen=True)
class PointSet:
    """A finite planar point configuration stored as coordinate arrays.

    The arrays are treated as immutable once constructed.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        if self.xs.shape != self.ys.shape or self.xs.ndim != 1:
            raise ValueError("coordinate arrays must be 1-D and equal length")

    def __len__(self) -> int:
        return int(self.xs.shape[0])

    def __iter__(self) -> Iterator[Point]:
        for x, y in zip(self.xs.tolist(), self.ys.tolist()):
            yield Point(x, y)

    @classmethod
    def empty(cls) -> "PointSet":
        return cls(np.empty(0, dtype=np.float64), np.empty(0, dtype=np.float64))

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "PointSet":
        pts = list(points)
        xs = np.array([p[0] for p in pts], dtype=np.float64)
        ys = np.array([p[1] for p in pts], dtype=np.float64)
        return cls(xs, ys)

    def as_array(self) -> np.ndarray:
        """(n, 2) coordinate matrix."""
        return np.column_stack([self.xs, self.ys])


def merge(a: PointSet, b: PointSet) -> PointSet:
    return PointSet(np.concatenate([a.xs, b.xs]), np.concatenate([a.ys, b.ys]))


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def count_close_pairs(ps: PointSet, r: float) -> int:
    """Number of unordered pairs {i, j}, i < j, with dist <= r."""
    return int(kernels.close_pair_count(ps.xs, ps.ys, r))


def count_cross_pairs(a: PointSet, b: PointSet, r: float) -> int:
    """Number of pairs (p, q) with p from a, q from b, dist <= r."""
    return int(kernels.cross_pair_count(a.xs, a.ys, b.xs, b.ys, r))


def split_cut(rect: Rect) -> CutLine:
    """Cut used by split_region: perpendicular to the longer side, at its
    midpoint.  A square splits on x."""
    if rect.width >= rect.height:
        return CutLine("x", rect.x0 + 0.5 * rect.width)
    return CutLine("y", rect.y0 + 0.5 * rect.height)


def split_region(rect: Rect) -> tuple[Rect, Rect]:
    """Halve the rectangle across its longer side (ties split on x).

    The shared edge is measure zero; by convention a point lying exactly
    on the cut belongs to the lower/left half.
    """
    cut = split_cut(rect)
    if cut.axis == "x":
        return (Rect(rect.x0, rect.y0, cut.coord, rect.y1),
                Rect(cut.coord, rect.y0, rect.x1, rect.y1))
    return (Rect(rect.x0, rect.y0, rect.x1, cut.coord),
            Rect(rect.x0, cut.coord, rect.x1, rect.y1))


def strip_near_cut(ps: PointSet, cut: CutLine, r: float) -> PointSet:
    """Points within distance r of the cut line (inclusive).

    Any pair within distance r that straddles the cut has both endpoints
    inside their respective strips, so counting cross pairs on the two
    strips gives exactly the full cross-pair count.
    """
    coords = ps.xs if cut.axis == "x" else ps.ys
    mask = np.abs(coords - cut.coord) <= r
    return PointSet(ps.xs[mask], ps.ys[mask])
