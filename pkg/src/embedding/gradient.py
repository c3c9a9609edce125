"""
Analytic derivatives of the embedding.

Per direction the embedding is a finite sum over the sorted projections:

    E = 2 (1 + xi) * sum_k x_(k) [g(W_k) - g(W_{k-1})],   g(W) = W sinc(2 xi W)

Away from ties in the projected values the sorting permutation is locally
constant, so

    dE / d x_(k)  = 2 (1 + xi) [g(W_k) - g(W_{k-1})]          (times v for the point)
    dE / d w_(l)  = 2 (1 + xi) sum_{k >= l} cos(2 pi xi W_k) (x_(k) - x_(k+1))

using g'(W) = cos(2 pi xi W) and x_(N+1) = 0. Weights are treated as free
variables (no projection onto the simplex). On the tie set the map is not
differentiable and a TieError names the direction.
"""

from typing import Tuple

import numpy as np

from ..errors import DimensionMismatchError, TieError
from ..measures import ProbabilityMeasure
from ..quantile import projected_values
from .params import EmbeddingParams


def fsw_gradient(points: np.ndarray, weights: np.ndarray,
                 directions: np.ndarray, frequencies: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gradient of every coordinate with respect to points and weights.

    Args:
        points: (d, N) support
        weights: (N,) weights, used as given
        directions: (m, d) unit directions
        frequencies: (m,) frequencies

    Returns:
        (d, N, m) gradient with respect to points and (N, m) with respect to weights

    Raises:
        TieError: two projected values coincide along some direction
    """
    projections = projected_values(points, directions)
    order = np.argsort(projections, axis=1, kind="stable")
    values = np.take_along_axis(projections, order, axis=1)

    tied = np.any(np.diff(values, axis=1) == 0, axis=1)
    if np.any(tied):
        raise TieError(int(np.argmax(tied)))

    xi = frequencies[:, None]
    scale = 2.0 * (1.0 + xi)
    cum = np.cumsum(weights[order], axis=1)
    g = cum * np.sinc(2.0 * xi * cum)
    g_prev = np.zeros_like(g)
    g_prev[:, 1:] = g[:, :-1]

    value_coef = np.empty_like(values)
    np.put_along_axis(value_coef, order, scale * (g - g_prev), axis=1)

    following = np.zeros_like(values)
    following[:, :-1] = values[:, 1:]
    terms = np.cos(2.0 * np.pi * xi * cum) * (values - following)
    tail_sums = np.cumsum(terms[:, ::-1], axis=1)[:, ::-1]
    weight_grad = np.empty_like(values)
    np.put_along_axis(weight_grad, order, scale * tail_sums, axis=1)

    point_grad = np.einsum("kj,kc->cjk", value_coef, directions)
    return point_grad, weight_grad.T


def embed_grad(mu: ProbabilityMeasure, params: EmbeddingParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact partial derivatives of embed(mu, params).

    Returns:
        (d, N, m) gradient with respect to the points and (N, m) with respect
        to the weights

    Raises:
        TieError: projected values tie along some direction (the index is
            carried by the exception)
    """
    if mu.dim != params.d:
        raise DimensionMismatchError(f"measure lives in R^{mu.dim}, parameters in R^{params.d}")
    return fsw_gradient(mu.points, mu.weights, params.directions, params.frequencies)
