"""Tests for parameter sampling, the embedding, its mass variants and gradients."""

import numpy as np
import pytest
from scipy import integrate, stats

from src.embedding import (
    EmbeddingParams,
    EmbeddingVector,
    MassMode,
    Variant,
    embed,
    embed_grad,
    embed_measure,
    embedding_distance,
    frequency_from_uniform,
    m_measure,
    m_measure_multiset,
    m_multiset,
    one_sample,
    sample_params,
    sliced_estimate_from_embeddings,
)
from src.errors import DimensionMismatchError, FSWError, MeasureError, TieError
from src.measures import DiscreteMeasure, ProbabilityMeasure, dirac, from_multiset, pseudonorm, scale_points
from src.quantile import project, quantile
from src.validation import finite_difference_gradient, relative_error


def _random_measure(rng, d=3, n=7):
    w = rng.random(n) + 0.1
    return ProbabilityMeasure(rng.uniform(-1, 1, (d, n)), w / w.sum())


# =============================================================================
# Parameters
# =============================================================================

def test_frequency_inverse_cdf():
    assert frequency_from_uniform(0.0) == 0.0
    assert frequency_from_uniform(0.5) == pytest.approx(1.0)


def test_sample_params_shapes_and_determinism():
    params = sample_params(3, 40, seed=7)
    assert (params.d, params.m) == (3, 40)
    np.testing.assert_allclose(np.linalg.norm(params.directions, axis=1), 1.0, atol=1e-12)
    assert np.all(params.frequencies >= 0)
    again = sample_params(3, 40, seed=7)
    np.testing.assert_array_equal(params.directions, again.directions)
    np.testing.assert_array_equal(params.frequencies, again.frequencies)
    assert not np.array_equal(params.frequencies, sample_params(3, 40, seed=8).frequencies)


def test_prefix_of_larger_draw_is_smaller_draw():
    big = sample_params(2, 600, seed=11)
    small = sample_params(2, 300, seed=11)
    head = big.head(300)
    np.testing.assert_array_equal(head.directions, small.directions)
    np.testing.assert_array_equal(head.frequencies, small.frequencies)


@pytest.mark.parametrize("d, m, seed", [(0, 5, 1), (3, 0, 1), (3, 5, -1), (3, 5, 2 ** 64)])
def test_sample_params_rejects_bad_arguments(d, m, seed):
    with pytest.raises(FSWError):
        sample_params(d, m, seed)


def test_params_json_regenerates_from_seed(tmp_path):
    params = sample_params(3, 10, seed=5)
    path = tmp_path / "params.json"
    params.to_json(path, with_arrays=False)
    back = EmbeddingParams.from_json(path)
    np.testing.assert_array_equal(back.directions, params.directions)
    np.testing.assert_array_equal(back.frequencies, params.frequencies)


@pytest.mark.parametrize("missing", ["directions", "frequencies"])
def test_params_dict_needs_both_arrays(missing):
    data = sample_params(2, 4, seed=5).to_dict()
    del data[missing]
    with pytest.raises(FSWError, match="partner"):
        EmbeddingParams.from_dict(data)


def test_frequency_law():
    xi = sample_params(1, 20_000, seed=3).frequencies
    result = stats.kstest(xi, lambda x: x / (1.0 + x))
    assert result.pvalue > 1e-4


def test_directions_uniform_on_sphere():
    # Archimedes: one coordinate of a uniform point on S^2 is uniform on [-1, 1]
    v = sample_params(3, 20_000, seed=4).directions
    assert stats.kstest(v[:, 2], "uniform", args=(-1.0, 2.0)).pvalue > 1e-4


def test_injectivity_thresholds():
    assert m_multiset(5, 3) == 31
    assert m_measure(5, 3) == 39
    assert m_measure_multiset(5, 3) == 32


# =============================================================================
# Single coordinate
# =============================================================================

def _quadrature(mu, v, xi):
    q = quantile(project(mu, v))
    total = 0.0
    for value, a, b in zip(q.values, q.breakpoints[:-1], q.breakpoints[1:]):
        piece, _ = integrate.quad(lambda t: np.cos(2 * np.pi * xi * t), a, b, epsabs=1e-13, epsrel=1e-13)
        total += value * piece
    return 2.0 * (1.0 + xi) * total


def test_one_sample_singleton_closed_form():
    value = one_sample(dirac([0.6, 0.8]), [0.6, 0.8], 0.25)
    assert value == pytest.approx(5 / np.pi, rel=1e-12)
    assert value == pytest.approx(_quadrature(dirac([0.6, 0.8]), [0.6, 0.8], 0.25), rel=1e-9)


def test_one_sample_matches_quadrature(rng):
    mu = _random_measure(rng)
    for xi in (0.0, 1e-9, 0.3, 2.0, 17.5):
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        assert one_sample(mu, v, xi) == pytest.approx(_quadrature(mu, v, xi), rel=1e-8, abs=1e-10)


def test_zero_frequency_is_twice_projected_mean(rng):
    mu = _random_measure(rng)
    v = np.array([0.0, 1.0, 0.0])
    assert one_sample(mu, v, 0.0) == pytest.approx(2.0 * np.dot(mu.weights, mu.points[1]), rel=1e-12)


def test_one_sample_is_continuous_at_zero_frequency(rng):
    mu = _random_measure(rng)
    v = np.array([1.0, 0.0, 0.0])
    assert one_sample(mu, v, 1e-12) == pytest.approx(one_sample(mu, v, 0.0), abs=1e-10)


def test_one_sample_rejects_bad_frequency():
    with pytest.raises(FSWError):
        one_sample(dirac([1.0]), [1.0], -0.5)


def test_bounds_on_random_draws(rng):
    params = sample_params(3, 2000, seed=9)
    for _ in range(5):
        mu = _random_measure(rng)
        radius = pseudonorm(mu, np.inf)
        coords = embed(mu, params).coords
        assert np.all(np.abs(coords) <= 3.0 * radius)
        xi = params.frequencies
        positive = xi > 0
        decay = (1.0 + xi[positive]) * 3.0 * radius / (np.pi * xi[positive])
        assert np.all(np.abs(coords[positive]) <= decay)


# =============================================================================
# Embedding
# =============================================================================

def test_embed_of_origin_is_zero():
    params = sample_params(4, 25, seed=1)
    np.testing.assert_array_equal(embed(dirac(np.zeros(4)), params).coords, np.zeros(25))


def test_embed_coordinates_agree_with_one_sample(rng):
    mu = _random_measure(rng)
    params = sample_params(3, 12, seed=2)
    coords = embed(mu, params).coords
    expected = [one_sample(mu, v, xi) for v, xi in zip(params.directions, params.frequencies)]
    np.testing.assert_allclose(coords, expected, rtol=1e-14, atol=1e-15)


def test_embed_permutation_invariant(rng):
    mu = _random_measure(rng, n=9)
    params = sample_params(3, 50, seed=3)
    permuted = mu.permuted(rng.permutation(9))
    np.testing.assert_array_equal(embed(mu, params).coords, embed(permuted, params).coords)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0, 10.0])
def test_embed_positive_homogeneity(rng, alpha):
    mu = _random_measure(rng)
    params = sample_params(3, 64, seed=4)
    base = embed(mu, params).coords
    scaled = embed(scale_points(mu, alpha), params).coords
    np.testing.assert_allclose(scaled, alpha * base, rtol=1e-12, atol=1e-12 * np.abs(base).max())


def test_embed_independent_of_thread_count(rng, monkeypatch):
    mu = _random_measure(rng, n=20)
    params = sample_params(3, 2000, seed=5)
    monkeypatch.setenv("FSW_THREADS", "1")
    serial = embed(mu, params).coords
    monkeypatch.setenv("FSW_THREADS", "4")
    parallel = embed(mu, params).coords
    np.testing.assert_array_equal(serial, parallel)


def test_embed_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        embed(dirac([1.0, 2.0]), sample_params(3, 5, seed=1))


def test_embed_requires_probability_measure():
    with pytest.raises(MeasureError):
        embed(DiscreteMeasure([[1.0]], [0.5]), sample_params(1, 5, seed=1))


def test_multisets_of_different_size_collide_in_basic_embedding():
    params = sample_params(2, 30, seed=6)
    small = from_multiset([[0.0, 1.0], [0.0, 1.0]])
    large = from_multiset([[0.0, 0.0, 1.0, 1.0], [0.0, 0.0, 1.0, 1.0]])
    assert embedding_distance(embed(small, params), embed(large, params)) == pytest.approx(0.0, abs=1e-15)


def test_embedding_distance_estimates_sliced_distance():
    # 1-D translation by c: every slice sees W_2 = c
    mu = from_multiset([[0.0, 0.3, 1.0]])
    nu = from_multiset([[2.0, 2.3, 3.0]])
    params = sample_params(1, 40_000, seed=7)
    estimate, std_error = sliced_estimate_from_embeddings(embed(mu, params), embed(nu, params))
    assert abs(estimate ** 2 - 4.0) <= 4.0 * std_error
    assert embedding_distance(embed(mu, params), embed(nu, params)) == pytest.approx(estimate)


def test_embedding_distance_identity_and_mismatch(rng):
    mu = _random_measure(rng)
    e = embed(mu, sample_params(3, 10, seed=1))
    assert embedding_distance(e, e) == 0.0
    assert sliced_estimate_from_embeddings(e, e) == (0.0, 0.0)
    with pytest.raises(DimensionMismatchError):
        embedding_distance(e, embed(mu, sample_params(3, 11, seed=1)))
    with pytest.raises(DimensionMismatchError):
        embedding_distance(e, EmbeddingVector(e.coords, Variant.MASS_PLAIN))


# =============================================================================
# Mass variants
# =============================================================================

def test_zero_measure_regularized_is_zero():
    params = sample_params(2, 9, seed=1)
    zero = DiscreteMeasure([[1.0, 2.0], [3.0, 4.0]], [0.0, 0.0])
    vector = embed_measure(zero, params, rho=0.5, mode=MassMode.REGULARIZED)
    assert vector.variant is Variant.MASS_REGULARIZED
    np.testing.assert_array_equal(vector.coords, np.zeros(9))


def test_plain_mode_on_probability_measure(rng):
    mu = _random_measure(rng)
    params = sample_params(3, 15, seed=2)
    vector = embed_measure(mu, params, mode="plain")
    assert vector.coords[0] == pytest.approx(1.0)
    np.testing.assert_array_equal(vector.coords[1:], embed(mu, params.head(14)).coords)


def test_plain_mode_rejects_zero_measure():
    with pytest.raises(MeasureError):
        embed_measure(DiscreteMeasure([[1.0]], [0.0]), sample_params(1, 5, seed=1), mode=MassMode.PLAIN)


def test_homogeneous_mode_mass_channel(rng):
    points = rng.uniform(-1, 1, (2, 4))
    mu = DiscreteMeasure(points, [0.1, 0.2, 0.3, 0.4])
    params = sample_params(2, 12, seed=3)
    vector = embed_measure(mu, params, rho=0.5, mode=MassMode.HOMOGENEOUS)
    inner = vector.coords[1:]
    assert vector.coords[0] == pytest.approx(mu.mass * np.linalg.norm(inner))


def test_mass_variants_separate_counting_measures():
    params = sample_params(2, 10, seed=4)
    points = np.array([[0.0, 1.0], [0.0, 1.0]])
    once = DiscreteMeasure(points, [1.0, 1.0])
    twice = DiscreteMeasure(np.hstack([points, points]), [1.0] * 4)
    for mode in MassMode:
        a = embed_measure(once, params, mode=mode)
        b = embed_measure(twice, params, mode=mode)
        assert embedding_distance(a, b) > 1e-3


def test_mass_variants_need_two_coordinates():
    with pytest.raises(FSWError):
        embed_measure(dirac([1.0]), sample_params(1, 1, seed=1))


# =============================================================================
# Gradients
# =============================================================================

def test_singleton_gradient_closed_form():
    x = np.array([0.3, -0.2, 0.5])
    params = sample_params(3, 20, seed=8)
    point_grad, weight_grad = embed_grad(dirac(x), params)
    assert point_grad.shape == (3, 1, 20) and weight_grad.shape == (1, 20)
    xi = params.frequencies
    expected = 2.0 * (1.0 + xi) * np.sinc(2.0 * xi) * params.directions.T
    np.testing.assert_allclose(point_grad[:, 0, :], expected, rtol=1e-10, atol=1e-14)
    projected = params.directions @ x
    np.testing.assert_allclose(weight_grad[0], 2.0 * (1.0 + xi) * np.cos(2 * np.pi * xi) * projected,
                               rtol=1e-10, atol=1e-14)


def test_gradient_matches_finite_differences(rng):
    mu = _random_measure(rng, d=3, n=6)
    params = sample_params(3, 16, seed=9)
    analytic = embed_grad(mu, params)
    numeric = finite_difference_gradient(np.array(mu.points), np.array(mu.weights), params)
    assert relative_error(analytic[0], numeric[0]) <= 1e-5
    assert relative_error(analytic[1], numeric[1]) <= 1e-5


def test_gradient_raises_on_ties():
    mu = from_multiset([[0.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    with pytest.raises(TieError) as info:
        embed_grad(mu, sample_params(2, 8, seed=1))
    assert info.value.direction == 0


def test_gradient_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        embed_grad(dirac([1.0]), sample_params(2, 4, seed=1))


def test_invalid_thread_setting_falls_back(rng, monkeypatch, capsys):
    mu = _random_measure(rng)
    params = sample_params(3, 8, seed=1)
    monkeypatch.setenv("FSW_THREADS", "1")
    expected = embed(mu, params).coords
    monkeypatch.setenv("FSW_THREADS", "many")
    np.testing.assert_array_equal(embed(mu, params).coords, expected)
    assert "[WARN] ignoring FSW_THREADS='many'" in capsys.readouterr().err
