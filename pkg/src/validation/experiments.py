"""
Experiments - FSW Embedding Toolkit

Desk-scale reproductions of the embedding's headline behaviours:

- separation_experiment: the diagonal counterexample pair (which defeats
  pooling-based embeddings) is separated already with m = 1, and the
  embedding distance converges to the closed-form sliced distance as m grows;
- distortion_scan: empirical bi-Lipschitz constants c_hat, C_hat of the
  embedding against exact W_2 on multiset pairs;
- non_blip_demo: on general distributions no positively homogeneous
  embedding is lower-Lipschitz; the ratio ||E(mu_t) - E(nu_t)|| / W_p
  decays to 0 along an explicit two-point sequence;
- gradient_suite: analytic derivatives against central finite differences.
"""

from typing import Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import GRAD_ABS_FLOOR, GRAD_FD_STEP, GRAD_REL_TOL, SEPARATION_EPS
from ..embedding import (
    EmbeddingParams,
    derive_seed,
    embed,
    embedding_distance,
    fsw_coordinates,
    fsw_gradient,
    m_multiset,
    sample_params,
)
from ..errors import FSWError, MeasureError, TieError
from ..measures import ProbabilityMeasure, is_uniform
from ..quantile import project, wasserstein_1d
from ..transport import diagonal_multiset, sliced_wasserstein_collinear, wasserstein_exact
from .generators import ball_points, rng_for
from .report import CheckReport


# =============================================================================
# Separation of the diagonal pair
# =============================================================================

def separation_experiment(d: int, n1: int, n2: int, m_list: Iterable[int], seeds: int,
                          seed: int = 0, verbose: bool = False) -> pd.DataFrame:
    """
    Embedding distance between {i/(n1+1) * 1} and {i/(n2+1) * 1} in R^d.

    Seed s uses parameters sample_params(d, m, derive_seed(seed, s)) for
    every m, so rows are matched: the m-draw is a prefix of any larger draw.

    Returns:
        One row per m: mean_distance, sw_target (closed form), mean_abs_error
        (mean |distance - target| over seeds) and separated (fraction of
        seeds with distance > 1e-6)
    """
    x1, x2 = diagonal_multiset(d, n1), diagonal_multiset(d, n2)
    target = sliced_wasserstein_collinear(x1, x2)

    rows = []
    for m in tqdm(list(m_list), desc="separation", disable=not verbose):
        distances = np.empty(seeds)
        for s in range(seeds):
            params = sample_params(d, m, derive_seed(seed, s))
            distances[s] = embedding_distance(embed(x1, params), embed(x2, params))
        rows.append({
            "m": m,
            "mean_distance": float(distances.mean()),
            "sw_target": target,
            "mean_abs_error": float(np.mean(np.abs(distances - target))),
            "separated": float(np.mean(distances > SEPARATION_EPS)),
        })
    return pd.DataFrame(rows)


# =============================================================================
# Bi-Lipschitz distortion
# =============================================================================

def distortion_scan(pairs: Sequence[Tuple[ProbabilityMeasure, ProbabilityMeasure]],
                    params: EmbeddingParams) -> Tuple[float, float]:
    """
    Smallest and largest ||E(mu) - E(nu)|| / W_2(mu, nu) over the pairs.

    Args:
        pairs: Pairs of multisets (uniform weights) in R^params.d
        params: At least 2Nd+1 pairs, N the largest multiset size

    Returns:
        (c_hat, C_hat); C_hat / c_hat is the empirical distortion

    Raises:
        MeasureError: a pair is not two multisets, or is at W_2 distance 0
    """
    if not pairs:
        raise FSWError("need at least one pair")
    largest = max(max(mu.size, nu.size) for mu, nu in pairs)
    if params.m < m_multiset(largest, params.d):
        raise FSWError(
            f"m={params.m} is below 2Nd+1 = {m_multiset(largest, params.d)} for N={largest}, d={params.d}"
        )

    ratios = []
    for mu, nu in pairs:
        if not (is_uniform(mu) and is_uniform(nu)):
            raise MeasureError("distortion is measured on multisets (uniform weights)")
        distance, _ = wasserstein_exact(mu, nu, 2.0)
        if distance == 0:
            raise MeasureError("pair at W_2 distance 0 (identical multisets)")
        gap = np.linalg.norm(embed(mu, params).coords - embed(nu, params).coords)
        ratios.append(gap / distance)
    return float(min(ratios)), float(max(ratios))


# =============================================================================
# Failure of lower-Lipschitzness on distributions
# =============================================================================

def _two_point(x: np.ndarray, theta: float, scale: float = 1.0) -> ProbabilityMeasure:
    points = np.hstack([np.zeros((x.shape[0], 1)), scale * x.reshape(-1, 1)])
    return ProbabilityMeasure(points, np.array([1.0 - theta, theta]))


def non_blip_demo(x, p: float, steps: int, params: EmbeddingParams) -> pd.DataFrame:
    """
    Ratio of embedding gap to W_p along a sequence of two-point measures.

    With theta_t = 2^-t,

        mu_t = (1 - theta_t) delta_0 + theta_t delta_x
        nu_t = mu(theta_{t-1}) with points scaled by (theta_t / theta_{t-1})^(1/p)

    Both measures sit on the line through x, so W_p is computed exactly in
    1-D along x / ||x||. It is never below (theta_t / 2)^(1/p) ||x||, which
    is reported as `lower_bound`.

    Returns:
        Rows t = 2..steps with theta, embedding_gap, wasserstein, lower_bound, ratio
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != params.d:
        raise FSWError(f"x lives in R^{x.shape[0]}, parameters in R^{params.d}")
    norm = float(np.linalg.norm(x))
    if norm == 0:
        raise MeasureError("the construction needs x != 0")
    if not 1 <= p < np.inf:
        raise FSWError(f"p must be in [1, inf), got {p}")
    if steps < 2:
        raise FSWError("need steps >= 2")

    u = x / norm
    rows = []
    for t in range(2, steps + 1):
        theta, previous = 2.0 ** -t, 2.0 ** -(t - 1)
        mu = _two_point(x, theta)
        nu = _two_point(x, previous, scale=(theta / previous) ** (1.0 / p))
        gap = float(np.linalg.norm(embed(mu, params).coords - embed(nu, params).coords))
        distance = wasserstein_1d(project(mu, u), project(nu, u), p)
        rows.append({
            "t": t,
            "theta": theta,
            "embedding_gap": gap,
            "wasserstein": distance,
            "lower_bound": (theta / 2.0) ** (1.0 / p) * norm,
            "ratio": gap / distance,
        })
    return pd.DataFrame(rows)


# =============================================================================
# Gradients
# =============================================================================

def finite_difference_gradient(points: np.ndarray, weights: np.ndarray, params: EmbeddingParams,
                               step: float = GRAD_FD_STEP) -> Tuple[np.ndarray, np.ndarray]:
    """
    Central differences of the raw coordinates, shapes (d, N, m) and (N, m).

    Coordinates are linear in the points between ties, so point steps are
    plain. Along the weights the curvature grows like xi^2, so coordinate k
    uses the step step / sqrt(1 + xi_k).
    """
    d, n = points.shape
    directions, frequencies = params.directions, params.frequencies

    point_grad = np.empty((d, n, params.m))
    for c in range(d):
        for j in range(n):
            plus, minus = points.copy(), points.copy()
            plus[c, j] += step
            minus[c, j] -= step
            point_grad[c, j] = (fsw_coordinates(plus, weights, directions, frequencies)
                                - fsw_coordinates(minus, weights, directions, frequencies)) / (2.0 * step)

    weight_grad = np.empty((n, params.m))
    for k in range(params.m):
        h = step / np.sqrt(1.0 + frequencies[k])
        pair = (directions[k:k + 1], frequencies[k:k + 1])
        for j in range(n):
            plus, minus = weights.copy(), weights.copy()
            plus[j] += h
            minus[j] -= h
            weight_grad[j, k] = (fsw_coordinates(points, plus, *pair)[0]
                                 - fsw_coordinates(points, minus, *pair)[0]) / (2.0 * h)
    return point_grad, weight_grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """max |analytic - numeric| / max(max |numeric|, 1e-8)."""
    scale = max(float(np.max(np.abs(numeric))), GRAD_ABS_FLOOR)
    return float(np.max(np.abs(analytic - numeric))) / scale


def gradient_suite(instances: int, seed: int, d: int = 3, n: int = 6, m: int = 16,
                   verbose: bool = False) -> CheckReport:
    """
    embed_grad against finite differences on random generic measures.

    One extra instance with a duplicated support point must raise TieError;
    the check fails if it does not.
    """
    errors: List[float] = []
    for i in tqdm(range(instances), desc="gradients", disable=not verbose):
        rng = rng_for(seed, i)
        points = ball_points(rng, d, n)
        w = rng.exponential(size=n)
        weights = w / w.sum()
        params = sample_params(d, m, derive_seed(seed, i, 1))
        analytic = fsw_gradient(points, weights, params.directions, params.frequencies)
        numeric = finite_difference_gradient(points, weights, params)
        errors.append(max(relative_error(analytic[0], numeric[0]), relative_error(analytic[1], numeric[1])))

    rng = rng_for(seed, instances)
    tied = ball_points(rng, d, n)
    tied[:, 1] = tied[:, 0]
    params = sample_params(d, m, derive_seed(seed, instances, 1))
    try:
        fsw_gradient(tied, np.full(n, 1.0 / n), params.directions, params.frequencies)
        tie_detected = False
    except TieError:
        tie_detected = True

    worst = max(errors, default=0.0)
    return CheckReport(
        name="gradient",
        statistic=worst,
        bound=GRAD_REL_TOL,
        passed=worst <= GRAD_REL_TOL and tie_detected,
        samples=instances,
        details={"tie_detected": tie_detected},
    )
