"""Exact sampling for the Strauss point process and Potts models.

The stitching samplers split the domain (a rectangle, or a graph's
vertex set), sample the halves recursively, and accept the merge with
the interaction penalty restricted to pairs straddling the split.  The
output distribution is exact; only the running time is random.  Plain
acceptance-rejection and partial rejection sampling are included as
comparators, along with an independent statistical verification layer
and a benchmark harness.
"""

from .bench import BenchRecord, log_time_slope, parse_grid, run_bench
from .geometry import (CutLine, Point, PointSet, Rect, count_close_pairs,
                       count_cross_pairs, dist, merge, split_cut,
                       split_region, strip_near_cut, unit_square)
from .ising import (IsingInstance, bisect_vertices, coloring_index,
                    exact_ising_distribution, ising_stitch, ising_weight)
from .kernels import backend_name
from .strauss import (SampleStats, SampleTimeout, StraussParams, ar_strauss,
                      prs_strauss, sample_ppp, split_once_strauss,
                      stitch_strauss, strauss_penalty)
from .streams import RngStream
from .verify import (ComparisonReport, CountDistribution, OracleEstimate,
                     close_pair_probability_quadrature, compare_distributions,
                     empirical_count_distribution, gof_chi_square,
                     strauss_count_oracle, tv_distance)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord", "ComparisonReport", "CountDistribution", "CutLine",
    "IsingInstance", "OracleEstimate", "Point", "PointSet", "Rect",
    "RngStream", "SampleStats", "SampleTimeout", "StraussParams",
    "ar_strauss", "backend_name", "bisect_vertices",
    "close_pair_probability_quadrature", "coloring_index",
    "compare_distributions", "count_close_pairs", "count_cross_pairs",
    "dist", "empirical_count_distribution", "exact_ising_distribution",
    "gof_chi_square", "ising_stitch", "ising_weight", "log_time_slope",
    "merge", "parse_grid", "prs_strauss", "run_bench", "sample_ppp",
    "split_cut", "split_once_strauss", "split_region", "stitch_strauss",
    "strauss_count_oracle", "strauss_penalty", "strip_near_cut",
    "tv_distance", "unit_square",
]
