import itertools

import numpy as np
import pytest

from src.errors import DegenerateInstanceError, ResourceGuardError
from src.geometry import CenterSet, Dataset, clustering_cost
from src.oracle import (
    exact_lp_sensitivity,
    exact_medoids_opt,
    exact_medoids_sensitivity,
    grid_clustering_sensitivity,
)


def test_opt_with_k_equal_n_is_zero(small_instance):
    _, cost = exact_medoids_opt(small_instance, len(small_instance), 2)
    assert cost == 0.0


def test_opt_two_points_on_a_line():
    X = Dataset.from_points([[0], [10]])
    centers, cost = exact_medoids_opt(X, 1, 1)
    assert cost == 10.0
    assert centers.centers[0, 0] in (0.0, 10.0)


def test_opt_matches_pair_enumeration(rng):
    points = np.vstack([rng.normal(0, 1, size=(4, 2)), rng.normal(20, 1, size=(4, 2))])
    X = Dataset.from_points(points)
    _, cost = exact_medoids_opt(X, 2, 2)
    brute = min(clustering_cost(X, CenterSet(points[list(pair)]), 2)
                for pair in itertools.combinations(range(8), 2))
    assert cost == pytest.approx(brute)


def test_opt_guard(small_instance):
    with pytest.raises(ResourceGuardError):
        exact_medoids_opt(small_instance, 2, 2, guard=10)


def test_medoids_sensitivity_singleton():
    assert exact_medoids_sensitivity(Dataset.from_points([[3, 3]]), 0, 1, 2) == 1.0


def test_medoids_sensitivity_square_symmetry():
    X = Dataset.from_points([[0, 0], [0, 1], [1, 0], [1, 1]])
    values = [exact_medoids_sensitivity(X, i, 1, 2) for i in range(4)]
    assert values == pytest.approx([values[0]] * 4)
    assert 0 < values[0] <= 1


def test_medoids_sensitivity_degenerate_instance():
    X = Dataset.from_points([[2, 2], [2, 2]])
    with pytest.raises(DegenerateInstanceError):
        exact_medoids_sensitivity(X, 0, 1, 2)


def test_duplicated_point_shares_sensitivity():
    m = 6
    X = Dataset.from_points([[0.0]] * m + [[10.0]])
    assert exact_medoids_sensitivity(X, 0, 1, 2) <= 1 / m + 1e-12
    assert grid_clustering_sensitivity(X, 0, 1, 2).value <= 1 / m + 1e-12


def test_grid_sensitivity_matches_one_dimensional_sweep():
    X = Dataset.from_points([[0.0], [1.0], [2.0]])
    result = grid_clustering_sensitivity(X, 0, 1, 2, resolution=64)
    # f(c) = c^2 / (c^2 + (c-1)^2 + (c-2)^2) tem máximo 5/6 em c = 5/3
    assert result.value <= 5 / 6 + 1e-12
    assert result.value >= 5 / 6 - 1e-3
    assert result.spacing == pytest.approx(2 / 64)


def test_grid_dominates_medoids(rng):
    X = Dataset.from_points(rng.integers(1, 30, size=(15, 2)).astype(float))
    for i in range(len(X)):
        tau = exact_medoids_sensitivity(X, i, 1, 2)
        assert grid_clustering_sensitivity(X, i, 1, 2, resolution=16).value >= tau - 1e-12


def test_lp_identity_rows():
    for p in (1.0, 2.0, 3.0):
        assert exact_lp_sensitivity(np.eye(3), 1, p, n_directions=2000).value == pytest.approx(1.0)


def test_lp_closed_form_for_p2():
    A = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    result = exact_lp_sensitivity(A, 0, 2.0)
    assert result.exact
    assert result.value == pytest.approx(0.5)
    assert exact_lp_sensitivity(A, 2, 2.0).value == pytest.approx(1.0)


def test_lp_row_outside_span_of_others():
    A = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
    result = exact_lp_sensitivity(A, 0, 1.0)
    assert result.exact and result.value == 1.0


def test_lp_sampling_is_stable_and_sums_below_d(rng):
    A = rng.normal(size=(10, 3))
    coarse = [exact_lp_sensitivity(A, t, 1.0, np.random.default_rng(t), 5000).value for t in range(10)]
    fine = [exact_lp_sensitivity(A, t, 1.0, np.random.default_rng(100 + t), 20000).value for t in range(10)]
    assert np.all(np.abs(np.array(coarse) - np.array(fine)) <= 0.1)
    assert sum(fine) <= 3 + 1e-9
    assert all(0 < v <= 1 for v in fine)
