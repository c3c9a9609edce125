"""
Embedding Module - FSW Embedding Toolkit

Parameter sampling, the Fourier sliced-Wasserstein embedding, its
measure-extension variants and analytic derivatives.
"""

from .streams import check_seed, derive_seed, fresh_seed, draw_directions, frequency_from_uniform
from .params import EmbeddingParams, sample_params, m_multiset, m_measure, m_measure_multiset
from .fsw import (
    Variant,
    MassMode,
    EmbeddingVector,
    fsw_coordinates,
    one_sample,
    embed,
    embed_measure,
    embedding_distance,
    sliced_estimate_from_embeddings,
    delta_squared,
)
from .gradient import fsw_gradient, embed_grad

__all__ = [
    "check_seed",
    "derive_seed",
    "fresh_seed",
    "draw_directions",
    "frequency_from_uniform",
    "EmbeddingParams",
    "sample_params",
    "m_multiset",
    "m_measure",
    "m_measure_multiset",
    "Variant",
    "MassMode",
    "EmbeddingVector",
    "fsw_coordinates",
    "one_sample",
    "embed",
    "embed_measure",
    "embedding_distance",
    "sliced_estimate_from_embeddings",
    "delta_squared",
    "fsw_gradient",
    "embed_grad",
]
