"""
Quantile Module - FSW Embedding Toolkit

One-dimensional projections, quantile step functions and exact 1-D
Wasserstein distances.
"""

from .step import (
    StepQuantile,
    projected_values,
    check_unit,
    project,
    quantile,
    quantile_lp_distance,
    wasserstein_1d,
    wasserstein_sorted,
)
from .batched import sliced_squared_distances

__all__ = [
    "StepQuantile",
    "projected_values",
    "check_unit",
    "project",
    "quantile",
    "quantile_lp_distance",
    "wasserstein_1d",
    "wasserstein_sorted",
    "sliced_squared_distances",
]
