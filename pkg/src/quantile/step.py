"""
Quantile Step Functions - FSW Embedding Toolkit

One-dimensional projections of measures, their quantile functions, and the
exact 1-D Wasserstein distances computed from them.

METHODOLOGY:
============
For a 1-D probability measure nu = sum_i w_i delta_{x_i}, sort the support
(stable, ties keep their original order) and accumulate the weights:

    W_k = w_(1) + ... + w_(k)

The quantile function is the right-continuous staircase

    Q(t) = x_(k_min(t)),   k_min(t) = min{ k : W_k > t },   t in [0, 1)

extended by Q(1) = ess max. Since quantile functions of discrete measures
are piecewise constant, the identity

    W_p(mu, nu)^p = integral_0^1 |Q_mu(t) - Q_nu(t)|^p dt

is evaluated exactly as a finite sum over the merged breakpoint partition.
For p = inf the distance is the largest jump |Q_mu - Q_nu| over the pieces.

Cumulative weights are summed in extended precision and the last
breakpoint is pinned to exactly 1, so rounding drift cannot move pieces.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from config import UNIT_NORM_TOL
from ..errors import DimensionMismatchError, MeasureError
from ..measures import DiscreteMeasure, ProbabilityMeasure

ArrayLike = Union[np.ndarray, list, tuple]


@dataclass(frozen=True, eq=False)
class StepQuantile:
    """
    Quantile function of a discrete 1-D probability measure.

    Attributes:
        breakpoints: 0 = t_0 < t_1 < ... < t_K = 1, shape (K+1,)
        values: v_1 <= ... <= v_K, value on [t_{k-1}, t_k), shape (K,)
    """
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        breakpoints = np.array(self.breakpoints, dtype=np.float64)
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or breakpoints.shape != (values.shape[0] + 1,):
            raise MeasureError("need K values and K+1 breakpoints")
        if values.shape[0] < 1:
            raise MeasureError("a quantile function needs at least one piece")
        if breakpoints[0] != 0.0 or breakpoints[-1] != 1.0:
            raise MeasureError("breakpoints must start at 0 and end at 1")
        if np.any(np.diff(breakpoints) <= 0):
            raise MeasureError("breakpoints must be strictly increasing")
        if np.any(np.diff(values) < 0):
            raise MeasureError("quantile values must be nondecreasing")
        breakpoints.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    @property
    def pieces(self) -> int:
        return self.values.shape[0]

    def eval(self, t: Union[float, ArrayLike]) -> Union[float, np.ndarray]:
        """
        Evaluate Q(t), right-continuous, with Q(1) = last value.

        Args:
            t: Scalar or array of levels in [0, 1]
        """
        levels = np.asarray(t, dtype=np.float64)
        if np.any(levels < 0) or np.any(levels > 1) or np.any(np.isnan(levels)):
            raise MeasureError("quantile levels must lie in [0, 1]")
        index = np.searchsorted(self.breakpoints[1:], levels, side="right")
        index = np.minimum(index, self.pieces - 1)
        result = self.values[index]
        return float(result) if np.ndim(result) == 0 else result

    __call__ = eval


# =============================================================================
# Projection
# =============================================================================

def projected_values(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """
    Inner products v_k^T x_i for every direction and support point.

    Accumulates coordinate by coordinate in a fixed order, so each entry is
    bitwise independent of how many points or directions are passed at once.

    Args:
        points: (d, N) support matrix
        directions: (m, d) direction matrix

    Returns:
        (m, N) matrix of projections
    """
    directions = np.asarray(directions, dtype=np.float64)
    result = directions[:, 0, None] * points[0, None, :]
    for j in range(1, points.shape[0]):
        result = result + directions[:, j, None] * points[j, None, :]
    return result


def check_unit(v, d: int) -> np.ndarray:
    """Flatten v and check it is a unit vector of R^d."""
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if v.shape[0] != d:
        raise DimensionMismatchError(f"direction has {v.shape[0]} entries, measure lives in R^{d}")
    if abs(float(np.linalg.norm(v)) - 1.0) > UNIT_NORM_TOL:
        raise MeasureError(f"direction must be a unit vector, got norm {np.linalg.norm(v)!r}")
    return v


def project(mu: DiscreteMeasure, v: ArrayLike) -> DiscreteMeasure:
    """Pushforward of mu under x -> v^T x, as a d = 1 measure with the same weights."""
    v = check_unit(v, mu.dim)
    values = projected_values(mu.points, v.reshape(1, -1))
    return type(mu)(values, mu.weights)


# =============================================================================
# Quantile functions
# =============================================================================

def _cumulative(weights: np.ndarray) -> np.ndarray:
    cum = np.cumsum(weights.astype(np.longdouble)).astype(np.float64)
    cum[-1] = 1.0
    return cum


def quantile(nu: DiscreteMeasure) -> StepQuantile:
    """
    Quantile step function of a 1-D probability measure.

    Zero-weight atoms are dropped; ties in value keep their input order,
    which does not change the function.
    """
    if nu.dim != 1:
        raise DimensionMismatchError(f"quantile needs a 1-D measure, got d={nu.dim}")
    if not isinstance(nu, ProbabilityMeasure):
        raise MeasureError("quantile needs a probability measure")

    keep = nu.weights > 0
    values = nu.points[0][keep]
    weights = nu.weights[keep]
    order = np.argsort(values, kind="stable")
    values, weights = values[order], weights[order]

    cum = _cumulative(weights)
    cum[:-1] = np.minimum(cum[:-1], 1.0)
    previous = np.concatenate([[0.0], cum[:-1]])
    # the first atom to reach 1 closes the last piece; later atoms are empty
    mask = cum > previous

    breakpoints = np.concatenate([[0.0], cum[mask]])
    breakpoints[-1] = 1.0
    return StepQuantile(breakpoints, values[mask])


def quantile_lp_distance(q1: StepQuantile, q2: StepQuantile, p: float = 2.0) -> float:
    """
    Exact L_p distance between two quantile step functions.

    Equals W_p of the underlying 1-D measures.

    Args:
        q1, q2: Quantile functions
        p: Order in [1, inf]
    """
    if not p >= 1:
        raise MeasureError(f"p must be in [1, inf], got {p}")
    grid = np.union1d(q1.breakpoints, q2.breakpoints)
    lengths = np.diff(grid)
    mids = 0.5 * (grid[:-1] + grid[1:])
    gaps = np.abs(q1.eval(mids) - q2.eval(mids))

    if np.isinf(p):
        end_gap = abs(q1.values[-1] - q2.values[-1])
        return float(max(np.max(gaps[lengths > 0], initial=0.0), end_gap))
    return float(np.sum(lengths * gaps ** p) ** (1.0 / p))


def wasserstein_1d(mu: DiscreteMeasure, nu: DiscreteMeasure, p: float = 2.0) -> float:
    """W_p between two 1-D probability measures via their quantile functions."""
    return quantile_lp_distance(quantile(mu), quantile(nu), p)


def wasserstein_sorted(x: ArrayLike, y: ArrayLike) -> float:
    """
    W_2 between the uniform measures on x and y (equal sizes).

    Equals (1/sqrt(n)) * ||sort(x) - sort(y)||.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] == 0:
        raise MeasureError("need at least one value")
    return float(np.linalg.norm(np.sort(x) - np.sort(y)) / np.sqrt(x.shape[0]))
