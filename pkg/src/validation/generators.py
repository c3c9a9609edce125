"""Random measures for the verification checks."""

import numpy as np

from ..embedding import derive_seed
from ..measures import ProbabilityMeasure, from_multiset


def rng_for(seed: int, *keys: int) -> np.random.Generator:
    """Generator for one instance, addressed by (seed, keys)."""
    return np.random.Generator(np.random.Philox(derive_seed(seed, *keys)))


def ball_points(rng: np.random.Generator, d: int, n: int, radius: float = 1.0) -> np.ndarray:
    """n points uniform in the closed ball of radius `radius`, as a (d, n) matrix."""
    g = rng.standard_normal((d, n))
    g /= np.maximum(np.linalg.norm(g, axis=0), 1e-300)
    r = radius * rng.random(n) ** (1.0 / d)
    return g * r


def random_measure(rng: np.random.Generator, d: int, n: int,
                   radius: float = 1.0, uniform: bool = False) -> ProbabilityMeasure:
    """Random probability measure with n atoms in the ball; Dirichlet(1) weights unless uniform."""
    points = ball_points(rng, d, n, radius)
    if uniform:
        return from_multiset(points)
    w = rng.exponential(size=n)
    return ProbabilityMeasure(points, w / w.sum())
