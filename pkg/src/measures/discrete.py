"""
Discrete Measures - FSW Embedding Toolkit

This module represents finitely supported measures over R^d,

    mu = sum_i w_i * delta_{x_i},

stored as a d x N points matrix (one support point per column) and a
length-N weight vector.

CONVENTIONS:
============
- Multisets are identified with the uniform probability measure on their
  elements; repeated points carry the multiplicity.
- Duplicate support points are never merged.
- Points with zero weight are allowed and carry no meaning.
- Weights summing to 1 are checked with absolute tolerance WEIGHT_SUM_TOL.
  Nothing is renormalized silently: call normalize() explicitly.

Values are immutable after construction (arrays are copied and flagged
read-only), so measures can be shared freely between threads.
"""

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from config import WEIGHT_SUM_TOL
from ..errors import MeasureError

ArrayLike = Union[np.ndarray, list, tuple]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """
    A finitely supported nonnegative measure.

    Attributes:
        points: Support points, shape (d, N), columns are points
        weights: Nonnegative masses, shape (N,)
    """
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)

        if points.ndim == 1:
            points = points.reshape(1, -1)
        if points.ndim != 2:
            raise MeasureError(f"points must be a d x N matrix, got shape {points.shape}")
        if weights.ndim != 1:
            raise MeasureError(f"weights must be a vector, got shape {weights.shape}")

        d, n = points.shape
        if d < 1 or n < 1:
            raise MeasureError(f"need d >= 1 and N >= 1, got d={d}, N={n}")
        if weights.shape[0] != n:
            raise MeasureError(f"{n} support points but {weights.shape[0]} weights")
        if not np.all(np.isfinite(points)):
            raise MeasureError("support points must be finite")
        if not np.all(np.isfinite(weights)):
            raise MeasureError("weights must be finite")
        if np.any(weights < 0):
            raise MeasureError("weights must be nonnegative")

        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "weights", _frozen(weights))

    @property
    def dim(self) -> int:
        return self.points.shape[0]

    @property
    def size(self) -> int:
        return self.points.shape[1]

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def permuted(self, permutation: ArrayLike) -> "DiscreteMeasure":
        """Same measure with columns (and their weights) reordered."""
        permutation = np.asarray(permutation, dtype=np.int64)
        return type(self)(self.points[:, permutation], self.weights[permutation])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(d={self.dim}, N={self.size}, mass={self.mass:.6g})"


@dataclass(frozen=True, eq=False)
class ProbabilityMeasure(DiscreteMeasure):
    """A DiscreteMeasure whose weights lie in the probability simplex."""

    def __post_init__(self):
        super().__post_init__()
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise MeasureError(
                f"weights sum to {total!r}, not 1 (tolerance {WEIGHT_SUM_TOL:g}); "
                "use normalize() to rescale explicitly"
            )


# =============================================================================
# Constructors and elementary operations
# =============================================================================

def from_multiset(points: ArrayLike) -> ProbabilityMeasure:
    """
    Uniform probability measure on the columns of a d x n matrix.

    Repeated columns keep their multiplicity. A 1-D array is read as n
    scalar points (d = 1).
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(1, -1)
    if points.ndim != 2 or points.shape[1] == 0:
        raise MeasureError("the embedding is not defined on the empty multiset")
    n = points.shape[1]
    return ProbabilityMeasure(points, np.full(n, 1.0 / n))


def dirac(point: ArrayLike) -> ProbabilityMeasure:
    """Point mass at `point`."""
    point = np.asarray(point, dtype=np.float64).reshape(-1, 1)
    return ProbabilityMeasure(point, np.ones(1))


def total_mass(mu: DiscreteMeasure) -> float:
    """Sum of the weights."""
    return mu.mass


def normalize(mu: DiscreteMeasure) -> ProbabilityMeasure:
    """Divide the weights by the total mass; points are unchanged."""
    if isinstance(mu, ProbabilityMeasure):
        return mu
    mass = mu.mass
    if mass <= 0:
        raise MeasureError("cannot normalize the zero measure")
    return ProbabilityMeasure(mu.points, mu.weights / mass)


def regularize(mu: DiscreteMeasure, rho: float) -> ProbabilityMeasure:
    """
    Regularized measure mu_rho.

    If the total mass is at least rho this is normalize(mu). Otherwise the
    weights are divided by rho and the missing mass 1 - mass/rho is put on
    an extra support point at the origin, appended as the last column.
    The zero measure maps to delta_0.
    """
    if not rho > 0:
        raise MeasureError(f"rho must be positive, got {rho}")
    mass = mu.mass
    if mass >= rho:
        return normalize(mu)

    origin = np.zeros((mu.dim, 1))
    points = np.hstack([mu.points, origin])
    weights = np.append(mu.weights / rho, 1.0 - mass / rho)
    return ProbabilityMeasure(points, weights)


def pseudonorm(mu: ProbabilityMeasure, p: float) -> float:
    """
    W_p distance from mu to delta_0.

    For p < inf this is (sum w_i ||x_i||^p)^(1/p); for p = inf it is the
    largest norm among support points with positive weight.
    """
    if not isinstance(mu, ProbabilityMeasure):
        raise MeasureError("the pseudonorm is defined on probability measures")
    if not p >= 1:
        raise MeasureError(f"p must be in [1, inf], got {p}")

    norms = np.linalg.norm(mu.points, axis=0)
    if np.isinf(p):
        support = mu.weights > 0
        return float(np.max(norms[support])) if np.any(support) else 0.0
    return float(np.sum(mu.weights * norms ** p) ** (1.0 / p))


def scale_points(mu: DiscreteMeasure, alpha: float) -> DiscreteMeasure:
    """Multiply every support point by alpha >= 0; weights are unchanged."""
    if not alpha >= 0:
        raise MeasureError(f"alpha must be nonnegative, got {alpha}")
    return type(mu)(alpha * mu.points, mu.weights)


def scale_weights(mu: DiscreteMeasure, factor: float) -> DiscreteMeasure:
    """Multiply every weight by factor >= 0 (standard measure scaling)."""
    if not factor >= 0:
        raise MeasureError(f"factor must be nonnegative, got {factor}")
    return DiscreteMeasure(mu.points, factor * mu.weights)


def is_uniform(mu: DiscreteMeasure) -> bool:
    """True if all weights are equal (a multiset in measure form)."""
    return bool(np.all(mu.weights == mu.weights[0]))
