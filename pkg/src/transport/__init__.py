"""
Transport Module - FSW Embedding Toolkit

Exact and sliced Wasserstein distances used as ground truth.
"""

from .simplex import TransportPlan, north_west_corner, solve_transport
from .distances import (
    cost_matrix,
    wasserstein_exact,
    w_infinity_1d,
    sliced_squared_samples,
    sliced_wasserstein_mc,
    sliced_wasserstein_collinear,
    diagonal_multiset,
    pswe_counterexample_pair,
)

__all__ = [
    "TransportPlan",
    "north_west_corner",
    "solve_transport",
    "cost_matrix",
    "wasserstein_exact",
    "w_infinity_1d",
    "sliced_squared_samples",
    "sliced_wasserstein_mc",
    "sliced_wasserstein_collinear",
    "diagonal_multiset",
    "pswe_counterexample_pair",
]
