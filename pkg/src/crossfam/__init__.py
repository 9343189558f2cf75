"""Exact combinatorics of weakly cross intersecting families.

Everything in this package computes with plain Python integers; no result is
ever rounded, truncated, or compared in floating point.
"""

__version__ = "0.1.0"

from .exact_arith import (
    binomial,
    gaussian_binomial,
    set_profile,
    count_subspaces_by_intersection,
    subspace_profile,
    condition_threshold,
    set_threshold,
    subspace_threshold,
)
from .gf_subspaces import (
    Subspace,
    SubspaceFamily,
    rref,
    enumerate_subspaces,
    dim_intersection,
    intersect_subspace,
    sum_subspace,
    contains,
    build_star,
)
from .family_analysis import (
    SetFamily,
    IntersectionMatrix,
    ConditionReport,
    Sunflower,
    OverlapPartition,
    intersection_matrix,
    min_tuple_sum,
    is_weakly_cross_intersecting,
    find_sunflowers,
    classify_overlap,
    extremal_structure,
    verify_kernel_containment,
)
from .search_engine import (
    CandidatePool,
    SearchOptions,
    SearchResult,
    star_lower_bound,
    max_product_naive,
    max_product_bb,
    certify,
)

__all__ = [
    "__version__",
    "binomial",
    "gaussian_binomial",
    "set_profile",
    "count_subspaces_by_intersection",
    "subspace_profile",
    "condition_threshold",
    "set_threshold",
    "subspace_threshold",
    "Subspace",
    "SubspaceFamily",
    "rref",
    "enumerate_subspaces",
    "dim_intersection",
    "intersect_subspace",
    "sum_subspace",
    "contains",
    "build_star",
    "SetFamily",
    "IntersectionMatrix",
    "ConditionReport",
    "Sunflower",
    "OverlapPartition",
    "intersection_matrix",
    "min_tuple_sum",
    "is_weakly_cross_intersecting",
    "find_sunflowers",
    "classify_overlap",
    "extremal_structure",
    "verify_kernel_containment",
    "CandidatePool",
    "SearchOptions",
    "SearchResult",
    "star_lower_bound",
    "max_product_naive",
    "max_product_bb",
    "certify",
]
