"""有限经典极空间：构造、极秩、nice 子空间、商几何、余秩与忠实性"""

from .nice import Quotient, check_faithful, corank, is_nice, quotient_geometry
from .singular import (
    disjoint_maximal_singulars,
    embedding_bounds,
    greedy_singular_chain,
    hyperbolic_line,
    is_singular_mask,
    maximal_singular_subspaces,
    polar_rank,
)
from .space import PolarGeometry, build_polar, expected_point_count

__all__ = [
    "PolarGeometry",
    "Quotient",
    "build_polar",
    "check_faithful",
    "corank",
    "disjoint_maximal_singulars",
    "embedding_bounds",
    "expected_point_count",
    "greedy_singular_chain",
    "hyperbolic_line",
    "is_nice",
    "is_singular_mask",
    "maximal_singular_subspaces",
    "polar_rank",
    "quotient_geometry",
]
