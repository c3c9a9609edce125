"""
Statistical and Structural Checks - FSW Embedding Toolkit

Each check turns one claim about the embedding into an inequality that is
measured on random instances and reported as a CheckReport.

METHODOLOGY:
============
For i.i.d. parameter pairs (v, xi), the squared coordinate gap

    D2(v, xi) = (E(mu; v, xi) - E(nu; v, xi))^2

satisfies
    E_{v, xi}[D2]  = SW_2(mu, nu)^2           (expectation identity)
    E_{xi}[D2 | v] = W_2(v^T mu, v^T nu)^2     (per direction)
    std[D2]       <= 13 R^2                    (R bounds ||mu||_inf, ||nu||_inf)
    std[D2 | v]   <= 3 (||mu||_inf + ||nu||_inf) W_2(v^T mu, v^T nu)

and every coordinate is bounded, |E(mu; v, xi)| <= 3 ||mu||_inf, with the
sharper |E| <= (1 + xi) * 3 ||mu||_inf / (pi xi) for large frequencies.

Sampling noise is the only thing separating the two sides of an identity,
so identities pass when they agree within SIGMA_LEVEL combined standard
errors. Sample standard deviations are compared with their bound inflated
by (1 + 5 / sqrt(samples)).
"""

import math
from typing import Optional, Sequence

import numpy as np
from tqdm import tqdm

from config import (
    BOUNDEDNESS_CONSTANT,
    EXPECTATION_PILOT,
    ORACLE_TOL,
    SIGMA_LEVEL,
    SYMMETRY_TOL,
    TARGET_ERROR_RATIO,
    VARIANCE_CONSTANT,
)
from ..embedding import (
    EmbeddingParams,
    delta_squared,
    derive_seed,
    embed,
    fsw_coordinates,
    sample_params,
)
from ..errors import FSWError
from ..measures import ProbabilityMeasure, from_multiset, pseudonorm, scale_points
from ..quantile import check_unit, project, wasserstein_1d, wasserstein_sorted
from ..transport import sliced_squared_samples, wasserstein_exact
from .generators import ball_points, random_measure, rng_for
from .report import CheckReport


def mean_and_error(values: np.ndarray):
    """Sample mean and standard error of the mean."""
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        raise FSWError("need at least two samples for a standard error")
    return float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(values.size))


def _radius(*measures: ProbabilityMeasure) -> float:
    return max(pseudonorm(m, np.inf) for m in measures)


def _inflation(samples: int) -> float:
    return 1.0 + 5.0 / math.sqrt(samples)


# =============================================================================
# Expectation and variance
# =============================================================================

def check_expectation_identity(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                               samples: int, seed: int,
                               pilot: int = EXPECTATION_PILOT) -> CheckReport:
    """
    Mean of D2 over `samples` parameter pairs against SW_2^2.

    In d = 1 the target is the exact W_2^2. Otherwise it is a Monte-Carlo
    sliced estimate whose number of directions is chosen from a pilot run so
    that its standard error is below a third of the D2 side's.
    """
    params = sample_params(mu.dim, samples, derive_seed(seed, 0))
    deltas = delta_squared(mu, nu, params)
    mean, error = mean_and_error(deltas)

    if mu.dim == 1:
        target, target_error, slices = wasserstein_1d(mu, nu, 2.0) ** 2, 0.0, 0
    else:
        spread = float(np.var(deltas, ddof=1))
        pilot_draws = sliced_squared_samples(mu, nu, pilot, derive_seed(seed, 1))
        slices = pilot
        if spread > 0:
            # x1.5 absorbs the noise of the pilot variance
            needed = 1.5 * float(np.var(pilot_draws, ddof=1)) * samples / (TARGET_ERROR_RATIO ** 2 * spread)
            slices = max(pilot, int(math.ceil(needed)))
        target, target_error = mean_and_error(sliced_squared_samples(mu, nu, slices, derive_seed(seed, 2)))

    combined = math.hypot(error, target_error)
    return CheckReport(
        name="expectation_identity",
        statistic=mean,
        bound=target,
        std_error=combined,
        passed=abs(mean - target) <= SIGMA_LEVEL * combined,
        samples=samples,
        details={"delta_std_error": error, "target_std_error": target_error, "slices": slices},
    )


def check_direction_expectation(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                                v, samples: int, seed: int) -> CheckReport:
    """
    Fixed direction v, frequencies only: mean of D2 against the exact
    W_2(v^T mu, v^T nu)^2, and std of D2 against 3 (||mu|| + ||nu||) W.
    """
    v = check_unit(v, mu.dim)
    frequencies = sample_params(1, samples, seed).frequencies
    directions = np.tile(v, (samples, 1))
    gaps = (fsw_coordinates(mu.points, mu.weights, directions, frequencies)
            - fsw_coordinates(nu.points, nu.weights, directions, frequencies))
    mean, error = mean_and_error(gaps ** 2)

    along = wasserstein_1d(project(mu, v), project(nu, v), 2.0)
    std = float(np.std(gaps ** 2, ddof=1))
    std_bound = 3.0 * (pseudonorm(mu, np.inf) + pseudonorm(nu, np.inf)) * along * _inflation(samples)
    mean_ok = abs(mean - along ** 2) <= SIGMA_LEVEL * error
    return CheckReport(
        name="direction_expectation",
        statistic=mean,
        bound=along ** 2,
        std_error=error,
        passed=mean_ok and std <= std_bound,
        samples=samples,
        details={"std": std, "std_bound": std_bound, "mean_within_sigma": mean_ok},
    )


def check_variance_bound(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                         samples: int, seed: int) -> CheckReport:
    """Empirical std of D2 against 13 R^2 (1 + 5/sqrt(samples))."""
    params = sample_params(mu.dim, samples, seed)
    std = float(np.std(delta_squared(mu, nu, params), ddof=1))
    radius = _radius(mu, nu)
    bound = VARIANCE_CONSTANT * radius ** 2 * _inflation(samples)
    return CheckReport(
        name="variance_bound",
        statistic=std,
        bound=bound,
        passed=std <= bound,
        samples=samples,
        details={"radius": radius},
    )


# =============================================================================
# Boundedness
# =============================================================================

def _bounded_instance(seed: int, index: int, d: int, max_atoms: int) -> ProbabilityMeasure:
    rng = rng_for(seed, index)
    if index % 4 == 0:
        # unit-norm singletons come closest to the bound
        x = ball_points(rng, d, 1)
        return from_multiset(x / max(np.linalg.norm(x), 1e-300))
    return random_measure(rng, d, int(rng.integers(1, max_atoms + 1)))


def check_boundedness(measure_count: int, samples_per: int, seed: int,
                      bound: float = BOUNDEDNESS_CONSTANT, d: int = 3, max_atoms: int = 8,
                      measures: Optional[Sequence[ProbabilityMeasure]] = None,
                      verbose: bool = False) -> CheckReport:
    """
    Count draws with |E(mu; v, xi)| > bound * ||mu||_inf.

    Measures are random (unit-ball supports, every fourth one a unit-norm
    singleton) unless given explicitly.

    Args:
        measure_count: Number of random measures (ignored if `measures` is given)
        samples_per: Parameter pairs per measure
        seed: Check seed
        bound: Constant of the inequality; lowering it below the true
            supremum makes the check fail
    """
    if measures is None:
        measures = [_bounded_instance(seed, i, d, max_atoms) for i in range(measure_count)]

    violations, worst = 0, 0.0
    for i, mu in enumerate(tqdm(measures, desc="boundedness", disable=not verbose)):
        params = sample_params(mu.dim, samples_per, derive_seed(seed, i, 1))
        coords = np.abs(embed(mu, params).coords)
        norm = pseudonorm(mu, np.inf)
        violations += int(np.count_nonzero(coords > bound * norm))
        if norm > 0:
            worst = max(worst, float(coords.max()) / norm)

    return CheckReport(
        name="boundedness",
        statistic=worst,
        bound=bound,
        passed=violations == 0,
        samples=len(measures) * samples_per,
        details={"violations": violations, "measures": len(measures)},
    )


def check_frequency_decay(mu: ProbabilityMeasure, samples: int, seed: int) -> CheckReport:
    """
    |E(mu; v, xi)| <= (1 + xi) * 3 ||mu||_inf / (pi xi) on every draw with xi > 0.

    The statistic is the largest ratio of |E| to its bound (pass: <= 1).
    """
    params = sample_params(mu.dim, samples, seed)
    coords = np.abs(embed(mu, params).coords)
    xi = params.frequencies
    norm = pseudonorm(mu, np.inf)
    positive = xi > 0
    limit = (1.0 + xi[positive]) * 3.0 * norm / (np.pi * xi[positive])
    over = coords[positive] > limit * (1.0 + 1e-12)
    ratios = np.divide(coords[positive], limit, out=np.zeros_like(limit), where=limit > 0)
    return CheckReport(
        name="frequency_decay",
        statistic=float(ratios.max(initial=0.0)),
        bound=1.0,
        passed=not np.any(over),
        samples=samples,
        details={"violations": int(np.count_nonzero(over))},
    )


# =============================================================================
# Structural checks
# =============================================================================

def _random_rotation(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def check_symmetries(measure_count: int, seed: int, d: int = 3, n: int = 6, m: int = 32) -> CheckReport:
    """
    Exact symmetries of the embedding on random measures:

        permutation   E(mu o perm) = E(mu)
        homogeneity   E(alpha mu) = alpha E(mu), alpha > 0
        rotation      E(R mu; R v, xi) = E(mu; v, xi)
        splitting     splitting an atom into two copies leaves E unchanged

    The statistic is the largest deviation over all of them.
    """
    worst = {"permutation": 0.0, "homogeneity": 0.0, "rotation": 0.0, "splitting": 0.0}
    for i in range(measure_count):
        rng = rng_for(seed, i)
        mu = random_measure(rng, d, n)
        params = sample_params(d, m, derive_seed(seed, i, 1))
        base = embed(mu, params).coords

        permuted = embed(mu.permuted(rng.permutation(n)), params).coords
        worst["permutation"] = max(worst["permutation"], float(np.max(np.abs(permuted - base))))

        alpha = float(rng.uniform(0.1, 10.0))
        scaled = embed(scale_points(mu, alpha), params).coords
        worst["homogeneity"] = max(worst["homogeneity"], float(np.max(np.abs(scaled / alpha - base))))

        rotation = _random_rotation(rng, d)
        turned = EmbeddingParams(params.directions @ rotation.T, params.frequencies, params.seed)
        rotated = embed(ProbabilityMeasure(rotation @ mu.points, mu.weights), turned).coords
        worst["rotation"] = max(worst["rotation"], float(np.max(np.abs(rotated - base))))

        split_points = np.hstack([mu.points, mu.points[:, :1]])
        split_weights = np.append(mu.weights, 0.5 * mu.weights[0])
        split_weights[0] *= 0.5
        split = embed(ProbabilityMeasure(split_points, split_weights), params).coords
        worst["splitting"] = max(worst["splitting"], float(np.max(np.abs(split - base))))

    statistic = max(worst.values())
    return CheckReport(
        name="symmetries",
        statistic=statistic,
        bound=SYMMETRY_TOL,
        passed=statistic <= SYMMETRY_TOL,
        samples=measure_count,
        details=worst,
    )


def check_oracle_equivalence(instances: int, seed: int, max_atoms: int = 12) -> CheckReport:
    """
    Independent routes to the same 1-D distance must agree within 1e-9:
    quantile integral vs transport LP (p in {1, 2, 3}), and for equal-size
    multisets the sorted-vector formula vs the LP. Every LP solution must
    also be dual feasible.
    """
    worst, worst_reduced = 0.0, 0.0
    for i in range(instances):
        rng = rng_for(seed, i)
        if i % 2 == 0:
            n = int(rng.integers(1, max_atoms + 1))
            x, y = rng.standard_normal(n), rng.standard_normal(n)
            exact, plan = wasserstein_exact(from_multiset(x), from_multiset(y), 2.0)
            gap = abs(exact - wasserstein_sorted(x, y))
        else:
            p = float(rng.choice([1.0, 2.0, 3.0]))
            mu = random_measure(rng, 1, int(rng.integers(1, max_atoms + 1)), radius=2.0)
            nu = random_measure(rng, 1, int(rng.integers(1, max_atoms + 1)), radius=2.0)
            exact, plan = wasserstein_exact(mu, nu, p)
            gap = abs(exact - wasserstein_1d(mu, nu, p))
        worst = max(worst, gap)
        worst_reduced = min(worst_reduced, plan.min_reduced_cost)

    return CheckReport(
        name="oracle_equivalence",
        statistic=worst,
        bound=ORACLE_TOL,
        passed=worst <= ORACLE_TOL and worst_reduced >= -ORACLE_TOL,
        samples=instances,
        details={"min_reduced_cost": worst_reduced},
    )
