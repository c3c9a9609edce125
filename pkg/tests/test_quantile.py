"""Tests for projections, quantile step functions and 1-D distances."""

import numpy as np
import pytest
from scipy import stats

from src.errors import DimensionMismatchError, MeasureError
from src.measures import ProbabilityMeasure, dirac, from_multiset, pseudonorm, scale_points
from src.quantile import (
    StepQuantile,
    project,
    quantile,
    quantile_lp_distance,
    sliced_squared_distances,
    wasserstein_1d,
    wasserstein_sorted,
)
from src.transport import wasserstein_exact


def test_project_on_axis():
    mu = dirac([3.0, 4.0])
    line = project(mu, [1.0, 0.0])
    assert line.dim == 1
    np.testing.assert_array_equal(line.points, [[3.0]])
    np.testing.assert_array_equal(line.weights, [1.0])


def test_project_is_linear(rng):
    points = rng.standard_normal((3, 5))
    mu = from_multiset(points)
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    np.testing.assert_allclose(project(scale_points(mu, 2.5), v).points,
                               scale_points(project(mu, v), 2.5).points, rtol=1e-14)


def test_project_rejects_non_unit_direction():
    with pytest.raises(MeasureError):
        project(dirac([1.0, 1.0]), [1.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        project(dirac([1.0, 1.0]), [1.0, 0.0, 0.0])


def test_quantile_uniform_staircase():
    q = quantile(from_multiset([[7.0, 1.0, 4.0]]))
    np.testing.assert_allclose(q.breakpoints, [0.0, 1 / 3, 2 / 3, 1.0])
    np.testing.assert_array_equal(q.values, [1.0, 4.0, 7.0])
    assert q(1 / 3) == 4.0
    assert q(0.0) == 1.0
    assert q(1.0) == 7.0


def test_quantile_weighted():
    q = quantile(ProbabilityMeasure([[5.0, 1.0]], [0.2, 0.8]))
    np.testing.assert_allclose(q.breakpoints, [0.0, 0.8, 1.0])
    np.testing.assert_array_equal(q.values, [1.0, 5.0])


def test_quantile_of_dirac_is_constant():
    q = quantile(dirac([2.5]))
    assert q.pieces == 1
    np.testing.assert_array_equal(q(np.linspace(0, 1, 11)), np.full(11, 2.5))


def test_quantile_drops_zero_weights():
    q = quantile(ProbabilityMeasure([[1.0, 9.0, 3.0]], [0.5, 0.0, 0.5]))
    np.testing.assert_array_equal(q.values, [1.0, 3.0])


def test_quantile_needs_one_dimension():
    with pytest.raises(DimensionMismatchError):
        quantile(dirac([1.0, 2.0]))


def test_eval_outside_unit_interval():
    q = quantile(dirac([1.0]))
    with pytest.raises(MeasureError):
        q(1.5)


def test_step_quantile_validates():
    with pytest.raises(MeasureError):
        StepQuantile([0.0, 0.5, 0.5, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(MeasureError):
        StepQuantile([0.0, 0.5, 1.0], [2.0, 1.0])


def test_quantile_matches_empirical_distribution(rng):
    sample = rng.standard_normal(5000)
    q = quantile(from_multiset(sample))
    levels = rng.random(5000)
    statistic = stats.ks_2samp(q(levels), sample).statistic
    assert statistic < 0.05


@pytest.mark.parametrize("x, y, p, expected", [
    ([0.0, 1.0], [0.0, 1.0, 2.0], 2, np.sqrt(0.5)),
    ([1.0, 3.0], [2.0, 4.0], 2, 1.0),
    ([0.0], [3.0], 1, 3.0),
    ([0.0, 1.0], [0.0, 1.0, 2.0], np.inf, 1.0),
])
def test_lp_distance_by_hand(x, y, p, expected):
    assert wasserstein_1d(from_multiset(x), from_multiset(y), p) == pytest.approx(expected, abs=1e-12)


def test_lp_distance_identity_and_symmetry(rng):
    mu = from_multiset(rng.standard_normal(6))
    nu = from_multiset(rng.standard_normal(9))
    assert quantile_lp_distance(quantile(mu), quantile(mu)) == 0.0
    assert wasserstein_1d(mu, nu) == pytest.approx(wasserstein_1d(nu, mu), rel=1e-14)


def test_lp_distance_matches_scipy_for_p1(rng):
    x, y = rng.standard_normal(11), rng.standard_normal(4)
    w = rng.random(4)
    w /= w.sum()
    ours = wasserstein_1d(from_multiset(x), ProbabilityMeasure(y, w), 1)
    assert ours == pytest.approx(stats.wasserstein_distance(x, y, v_weights=w), rel=1e-10)


def test_wasserstein_sorted():
    assert wasserstein_sorted([1.0, 3.0], [2.0, 4.0]) == pytest.approx(1.0)
    assert wasserstein_sorted([3.0, 1.0], [4.0, 2.0]) == pytest.approx(1.0)
    assert wasserstein_sorted([1.0, 2.0], [2.0, 1.0]) == 0.0
    with pytest.raises(DimensionMismatchError):
        wasserstein_sorted([1.0], [1.0, 2.0])


def test_sliced_batch_matches_per_direction(rng):
    mu = from_multiset(rng.standard_normal((3, 8)))
    w = rng.random(5)
    nu = ProbabilityMeasure(rng.standard_normal((3, 5)), w / w.sum())
    directions = rng.standard_normal((40, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    batched = sliced_squared_distances(mu, nu, directions)
    single = [wasserstein_1d(project(mu, v), project(nu, v)) ** 2 for v in directions]
    np.testing.assert_allclose(batched, single, rtol=1e-10, atol=1e-14)


def test_quantile_keeps_first_atom_reaching_one():
    # partial sums hit 1.0 before the last (negligible) atom
    nu = ProbabilityMeasure([[0.0, 1.0, 100.0]], [0.5, 0.5, 5e-13])
    q = quantile(nu)
    np.testing.assert_array_equal(q.breakpoints, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(q.values, [0.0, 1.0])
    assert q(0.75) == 1.0

    pair = from_multiset([[0.0, 1.0]])
    assert wasserstein_1d(nu, pair) == pytest.approx(0.0, abs=1e-9)
    assert wasserstein_exact(nu, pair)[0] == pytest.approx(0.0, abs=1e-9)
    assert sliced_squared_distances(nu, pair, np.array([[1.0]]))[0] == pytest.approx(0.0, abs=1e-9)


# =============================================================================
# Invariants on random measures
# =============================================================================

def _random_line(rng, n):
    w = rng.random(n) + 0.05
    return ProbabilityMeasure(rng.standard_normal((1, n)), w / w.sum())


def test_quantile_is_nondecreasing(rng):
    levels = np.linspace(0.0, 1.0, 2001)
    for n in (1, 4, 17):
        values = quantile(_random_line(rng, n))(levels)
        assert np.all(np.diff(values) >= 0)


def test_projected_quantile_bounded_by_support_radius(rng):
    levels = np.linspace(0.0, 1.0, 501)
    for _ in range(10):
        w = rng.random(8) + 0.05
        mu = ProbabilityMeasure(rng.uniform(-2, 2, (3, 8)), w / w.sum())
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        values = quantile(project(mu, v))(levels)
        assert np.all(np.abs(values) <= pseudonorm(mu, np.inf) * (1 + 1e-12))


def test_lp_distance_nondecreasing_in_p(rng):
    for _ in range(20):
        q1 = quantile(_random_line(rng, 5))
        q2 = quantile(_random_line(rng, 7))
        distances = [quantile_lp_distance(q1, q2, p) for p in (1, 2, 3, np.inf)]
        assert all(a <= b * (1 + 1e-12) for a, b in zip(distances, distances[1:]))


def test_sorted_shortcut_matches_quantile_route(rng):
    for n in (1, 5, 40):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        via_quantiles = quantile_lp_distance(quantile(from_multiset(x)), quantile(from_multiset(y)), 2)
        assert wasserstein_sorted(x, y) == pytest.approx(via_quantiles, abs=1e-12)
