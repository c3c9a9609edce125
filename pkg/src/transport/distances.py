"""
Reference Wasserstein Distances - FSW Embedding Toolkit

Ground-truth distances the embedding is checked against:

- wasserstein_exact: W_p in any dimension through the transport LP
  (desk-scale inputs only, at most MAX_EXACT_SUPPORT atoms per side);
- sliced_wasserstein_mc: Monte-Carlo sliced W_2 over uniform directions,
  each slice computed exactly from quantile functions;
- sliced_wasserstein_collinear: closed form SW = W_2 / sqrt(d) for measures
  supported on one line through the origin;
- w_infinity_1d: exact W_inf between 1-D measures.
"""

from typing import Tuple

import numpy as np

from config import COLLINEAR_TOL, MAX_EXACT_SUPPORT, SLICES_NAMESPACE
from ..embedding import draw_directions
from ..errors import CollinearityError, DimensionMismatchError, FSWError, MeasureError, SupportTooLargeError
from ..measures import ProbabilityMeasure, from_multiset
from ..quantile import project, sliced_squared_distances, wasserstein_1d
from .simplex import TransportPlan, solve_transport


def _check_pair(mu, nu):
    if not isinstance(mu, ProbabilityMeasure) or not isinstance(nu, ProbabilityMeasure):
        raise MeasureError("Wasserstein distances are computed between probability measures")
    if mu.dim != nu.dim:
        raise DimensionMismatchError(f"measures live in R^{mu.dim} and R^{nu.dim}")


def cost_matrix(x: np.ndarray, y: np.ndarray, p: float) -> np.ndarray:
    """||x_i - y_j||^p for the columns of x (d, n) and y (d, k)."""
    diff = x[:, :, None] - y[:, None, :]
    return np.sqrt(np.sum(diff ** 2, axis=0)) ** p


def wasserstein_exact(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                      p: float = 2.0) -> Tuple[float, TransportPlan]:
    """
    Exact W_p and an optimal plan, by the transportation simplex.

    Zero-weight atoms are removed before solving and come back as zero rows
    and columns of the plan.

    Args:
        mu, nu: Probability measures in the same R^d, at most 64 atoms each
        p: Order in [1, inf)

    Returns:
        (distance, plan)

    Raises:
        SupportTooLargeError: more than MAX_EXACT_SUPPORT atoms on a side
    """
    _check_pair(mu, nu)
    if not (1 <= p < np.inf):
        raise FSWError(f"exact solver needs p in [1, inf), got {p}")
    largest = max(mu.size, nu.size)
    if largest > MAX_EXACT_SUPPORT:
        raise SupportTooLargeError(
            f"exact transport is limited to {MAX_EXACT_SUPPORT} atoms per measure, got {largest}; "
            "use the Monte-Carlo sliced estimate (sw) for larger inputs"
        )

    rows = np.flatnonzero(mu.weights > 0)
    cols = np.flatnonzero(nu.weights > 0)
    cost = cost_matrix(mu.points[:, rows], nu.points[:, cols], p)
    flow, u, v, min_reduced, pivots = solve_transport(mu.weights[rows], nu.weights[cols], cost)

    matrix = np.zeros((mu.size, nu.size))
    matrix[np.ix_(rows, cols)] = flow
    row_duals, col_duals = np.zeros(mu.size), np.zeros(nu.size)
    row_duals[rows], col_duals[cols] = u, v

    total = max(float(np.sum(flow * cost)), 0.0)
    distance = total ** (1.0 / p)
    plan = TransportPlan(matrix, mu.weights, nu.weights, distance, float(p),
                         row_duals, col_duals, min_reduced, pivots)
    plan.check()
    return distance, plan


def w_infinity_1d(mu: ProbabilityMeasure, nu: ProbabilityMeasure) -> float:
    """Exact W_inf between 1-D probability measures (largest quantile gap)."""
    _check_pair(mu, nu)
    return wasserstein_1d(mu, nu, np.inf)


# =============================================================================
# Sliced distances
# =============================================================================

def sliced_squared_samples(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                           L: int, seed: int) -> np.ndarray:
    """
    W_2^2(v^T mu, v^T nu) for L uniform directions drawn from `seed`.

    Directions come from the embedding's sphere sampler in a separate
    namespace, so they never coincide with embedding parameters of the
    same seed.
    """
    _check_pair(mu, nu)
    if L < 1:
        raise FSWError(f"need at least one direction, got L={L}")
    directions = draw_directions(mu.dim, L, seed, SLICES_NAMESPACE)
    return sliced_squared_distances(mu, nu, directions)


def sliced_wasserstein_mc(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                          L: int, seed: int) -> Tuple[float, float]:
    """
    Monte-Carlo sliced Wasserstein distance.

    Returns:
        (sqrt(mean W_2^2), standard error of the mean of the W_2^2 samples)
    """
    if L < 2:
        raise FSWError(f"need L >= 2 directions for a standard error, got L={L}")
    samples = sliced_squared_samples(mu, nu, L, seed)
    estimate = float(np.sqrt(max(np.mean(samples), 0.0)))
    std_error = float(np.std(samples, ddof=1) / np.sqrt(L))
    return estimate, std_error


def _common_line(mu: ProbabilityMeasure, nu: ProbabilityMeasure):
    points = np.hstack([mu.points, nu.points])
    norms = np.linalg.norm(points, axis=0)
    if np.max(norms) == 0:
        return None
    u = points[:, int(np.argmax(norms))] / np.max(norms)
    residual = points - np.outer(u, u @ points)
    off_line = np.linalg.norm(residual, axis=0) > COLLINEAR_TOL * np.maximum(1.0, norms)
    if np.any(off_line):
        raise CollinearityError(
            f"{int(np.count_nonzero(off_line))} support point(s) are off the common line through the origin"
        )
    return u


def sliced_wasserstein_collinear(mu: ProbabilityMeasure, nu: ProbabilityMeasure) -> float:
    """
    SW_2 of two measures supported on one line through the origin.

    Every projection scales the line by |<v, u>|, and E[<v, u>^2] = 1/d,
    so SW = W_2(u^T mu, u^T nu) / sqrt(d).

    Raises:
        CollinearityError: some point is not a multiple of the common direction
    """
    _check_pair(mu, nu)
    u = _common_line(mu, nu)
    if u is None:
        return 0.0
    along = wasserstein_1d(project(mu, u), project(nu, u), 2.0)
    return along / np.sqrt(mu.dim)


def diagonal_multiset(d: int, n: int) -> ProbabilityMeasure:
    """Uniform multiset {i/(n+1) * 1 : i = 1..n} on the diagonal of R^d."""
    if d < 1 or n < 1:
        raise FSWError(f"need d, n >= 1, got d={d}, n={n}")
    levels = np.arange(1, n + 1) / (n + 1)
    return from_multiset(np.outer(np.ones(d), levels))


def pswe_counterexample_pair(d: int, n1: int, n2: int) -> Tuple[ProbabilityMeasure, ProbabilityMeasure]:
    """
    Uniform multisets {i/(n+1) * 1 : i = 1..n} in R^d for n = n1 and n = n2.

    Both lie on the diagonal, so their sliced distance has a closed form,
    while pooling-based embeddings cannot tell the members of such pairs
    apart.
    """
    if d < 1 or n1 < 1 or n2 < 1:
        raise FSWError(f"need d, n1, n2 >= 1, got d={d}, n1={n1}, n2={n2}")
    if n1 == n2:
        raise FSWError("the pair needs two different sizes")
    return diagonal_multiset(d, n1), diagonal_multiset(d, n2)
