"""
Measures Module - FSW Embedding Toolkit

Finitely supported measures and multisets over R^d, their elementary
transformations, and the CSV point-cloud format.
"""

from .discrete import (
    DiscreteMeasure,
    ProbabilityMeasure,
    from_multiset,
    dirac,
    total_mass,
    normalize,
    regularize,
    pseudonorm,
    scale_points,
    scale_weights,
    is_uniform,
)
from .pointcloud import PointCloud, read_point_cloud, write_point_cloud

__all__ = [
    "DiscreteMeasure",
    "ProbabilityMeasure",
    "from_multiset",
    "dirac",
    "total_mass",
    "normalize",
    "regularize",
    "pseudonorm",
    "scale_points",
    "scale_weights",
    "is_uniform",
    "PointCloud",
    "read_point_cloud",
    "write_point_cloud",
]
