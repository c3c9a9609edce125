"""
Fourier Sliced-Wasserstein Embedding - FSW Embedding Toolkit

METHODOLOGY:
============
One coordinate of the embedding of a probability measure mu is

    E(mu; v, xi) = 2 (1 + xi) * integral_0^1 Q_{v^T mu}(t) cos(2 pi xi t) dt

the cosine transform of the projected quantile function at frequency xi,
scaled by (1 + xi). With v ~ Uniform(S^{d-1}) and xi drawn with density
(1 + xi)^-2, the squared coordinate difference between two measures is an
unbiased estimate of the squared sliced-Wasserstein distance, so

    ||E_m(mu) - E_m(nu)|| / sqrt(m)  ~  SW(mu, nu).

COMPUTATION:
============
Q is a step function, so the integral is a finite sum. With the projected
support sorted, x_(1) <= ... <= x_(N), and cumulative weights W_k:

    E = 2 (1 + xi) * sum_k  W_k sinc(2 xi W_k) * (x_(k) - x_(k+1)),   x_(N+1) = 0

using the normalized sinc, sin(pi x) / (pi x), equal to 1 at 0. This form
never divides by xi, so it stays accurate as xi -> 0. The product
t * sinc(2 xi t) vanishes at t = 0 whatever convention sinc(0) follows.

Cost per call: O(m N d) for the projections plus O(m N log N) for sorting.
Coordinates are computed in fixed-size chunks of directions, optionally on a
thread pool (FSW_THREADS); the chunking never depends on the thread count,
so results are bit-identical for any degree of parallelism.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from config import DEFAULT_RHO, EMBED_CHUNK
from ..errors import DimensionMismatchError, FSWError, MeasureError
from ..measures import DiscreteMeasure, ProbabilityMeasure, normalize, regularize
from ..quantile import check_unit, projected_values
from ..utils import chunk_slices, worker_count
from .params import EmbeddingParams


class Variant(str, Enum):
    BASIC = "basic"
    MASS_PLAIN = "mass_plain"
    MASS_REGULARIZED = "mass_regularized"
    MASS_HOMOGENEOUS = "mass_homogeneous"


class MassMode(str, Enum):
    PLAIN = "plain"
    REGULARIZED = "regularized"
    HOMOGENEOUS = "homogeneous"


_MODE_VARIANT = {
    MassMode.PLAIN: Variant.MASS_PLAIN,
    MassMode.REGULARIZED: Variant.MASS_REGULARIZED,
    MassMode.HOMOGENEOUS: Variant.MASS_HOMOGENEOUS,
}


@dataclass(frozen=True, eq=False)
class EmbeddingVector:
    """
    Output of the embedding.

    Attributes:
        coords: Length-m vector; for mass variants coords[0] is the mass channel
        variant: Which construction produced it
    """
    coords: np.ndarray
    variant: Variant = Variant.BASIC

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64).reshape(-1)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def m(self) -> int:
        return self.coords.shape[0]

    def __repr__(self) -> str:
        return f"EmbeddingVector(m={self.m}, variant={self.variant.value})"


# =============================================================================
# Kernel
# =============================================================================

def _kernel(points: np.ndarray, weights: np.ndarray,
            directions: np.ndarray, frequencies: np.ndarray) -> np.ndarray:
    projections = projected_values(points, directions)
    order = np.argsort(projections, axis=1, kind="stable")
    values = np.take_along_axis(projections, order, axis=1)
    cum = np.cumsum(weights[order], axis=1)

    following = np.zeros_like(values)
    following[:, :-1] = values[:, 1:]
    xi = frequencies[:, None]
    t_sinc = cum * np.sinc(2.0 * xi * cum)
    return 2.0 * (1.0 + frequencies) * np.sum(t_sinc * (values - following), axis=1)


def fsw_coordinates(points: np.ndarray, weights: np.ndarray,
                    directions: np.ndarray, frequencies: np.ndarray) -> np.ndarray:
    """
    Raw embedding coordinates, no validation of the inputs.

    Weights are used as given (not required to sum to 1), which is what
    finite-difference checks need.

    Args:
        points: (d, N) support
        weights: (N,) weights
        directions: (m, d) unit directions
        frequencies: (m,) frequencies

    Returns:
        (m,) coordinates
    """
    points = np.asarray(points, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    directions = np.asarray(directions, dtype=np.float64)
    frequencies = np.asarray(frequencies, dtype=np.float64)

    chunks = chunk_slices(directions.shape[0], EMBED_CHUNK)
    workers = min(worker_count(), len(chunks))

    def run(chunk: slice) -> np.ndarray:
        return _kernel(points, weights, directions[chunk], frequencies[chunk])

    if workers <= 1:
        parts = [run(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    return np.concatenate(parts)


# =============================================================================
# Public operations
# =============================================================================

def _require_probability(mu) -> ProbabilityMeasure:
    if not isinstance(mu, ProbabilityMeasure):
        raise MeasureError("the basic embedding takes a probability measure; "
                           "use embed_measure for arbitrary mass")
    return mu


def one_sample(mu: ProbabilityMeasure, v, xi: float) -> float:
    """Single coordinate E(mu; v, xi)."""
    mu = _require_probability(mu)
    v = check_unit(v, mu.dim)
    if not (np.isfinite(xi) and xi >= 0):
        raise FSWError(f"frequency must be finite and nonnegative, got {xi}")
    return float(_kernel(mu.points, mu.weights, v.reshape(1, -1), np.array([float(xi)]))[0])


def embed(mu: ProbabilityMeasure, params: EmbeddingParams) -> EmbeddingVector:
    """
    The m-dimensional embedding; coordinate k is one_sample(mu, v_k, xi_k).

    Raises:
        DimensionMismatchError: mu and params live in different R^d
    """
    mu = _require_probability(mu)
    if mu.dim != params.d:
        raise DimensionMismatchError(f"measure lives in R^{mu.dim}, parameters in R^{params.d}")
    coords = fsw_coordinates(mu.points, mu.weights, params.directions, params.frequencies)
    return EmbeddingVector(coords, Variant.BASIC)


def embed_measure(mu: DiscreteMeasure, params: EmbeddingParams,
                  rho: float = DEFAULT_RHO,
                  mode: Union[MassMode, str] = MassMode.REGULARIZED) -> EmbeddingVector:
    """
    Embedding of a measure of arbitrary total mass.

    The first output is a mass channel; the other m - 1 coordinates embed a
    probability measure derived from mu with the first m - 1 parameter pairs.

        plain        [mass, E(mu / mass)]           (mass must be > 0)
        regularized  [mass, E(mu_rho)]
        homogeneous  [||E(mu_rho)|| * mass, E(mu_rho)]

    Args:
        mu: Any nonnegative measure (the zero measure is fine unless plain)
        params: At least two parameter pairs
        rho: Mass threshold of the regularized measure
        mode: plain, regularized or homogeneous
    """
    mode = MassMode(mode)
    if mu.dim != params.d:
        raise DimensionMismatchError(f"measure lives in R^{mu.dim}, parameters in R^{params.d}")
    if params.m < 2:
        raise FSWError("mass variants need m >= 2 (one coordinate is the mass channel)")

    inner_params = params.head(params.m - 1)
    mass = mu.mass
    if mode is MassMode.PLAIN:
        if mass <= 0:
            raise MeasureError("plain mass mode is undefined for the zero measure")
        inner = embed(normalize(mu), inner_params).coords
    else:
        inner = embed(regularize(mu, rho), inner_params).coords

    first = mass * float(np.linalg.norm(inner)) if mode is MassMode.HOMOGENEOUS else mass
    return EmbeddingVector(np.concatenate([[first], inner]), _MODE_VARIANT[mode])


def _check_comparable(e1: EmbeddingVector, e2: EmbeddingVector):
    if e1.variant is not e2.variant:
        raise DimensionMismatchError(f"variant mismatch: {e1.variant.value} vs {e2.variant.value}")
    if e1.m != e2.m:
        raise DimensionMismatchError(f"length mismatch: {e1.m} vs {e2.m}")


def embedding_distance(e1: EmbeddingVector, e2: EmbeddingVector) -> float:
    """sqrt( ||e1 - e2||^2 / m ), the sliced-Wasserstein estimate."""
    _check_comparable(e1, e2)
    return float(np.sqrt(np.mean((e1.coords - e2.coords) ** 2)))


def sliced_estimate_from_embeddings(e1: EmbeddingVector, e2: EmbeddingVector) -> Tuple[float, float]:
    """
    Embedding-distance estimate of SW together with its standard error.

    Returns:
        (estimate, std_error) where std_error is the standard error of the
        mean of the squared coordinate differences (an estimate of SW^2)
    """
    _check_comparable(e1, e2)
    squares = (e1.coords - e2.coords) ** 2
    std_error = float(np.std(squares, ddof=1) / np.sqrt(squares.size)) if squares.size > 1 else 0.0
    return float(np.sqrt(np.mean(squares))), std_error


def delta_squared(mu: ProbabilityMeasure, nu: ProbabilityMeasure, params: EmbeddingParams) -> np.ndarray:
    """Per-coordinate squared differences (E_k(mu) - E_k(nu))^2."""
    return (embed(mu, params).coords - embed(nu, params).coords) ** 2
