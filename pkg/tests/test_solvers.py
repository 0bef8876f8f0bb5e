import itertools

import numpy as np
import pytest

from src.errors import ContractError, NoCentersError
from src.geometry import CenterSet, Dataset, clustering_cost, prepare_swap_bookkeeping
from src.solvers import (
    NEW_POINT,
    SwapCandidate,
    adaptive_seed_indices,
    constrained_costs,
    constrained_with_center,
    default_max_iters,
    fast_kz_approx,
    local_search_medoids,
)


@pytest.fixture
def two_clusters(rng):
    points = np.vstack([rng.normal(0, 1, size=(4, 2)), rng.normal(50, 1, size=(4, 2))])
    return Dataset.from_points(points)


def test_local_search_reaches_optimum_on_separated_clusters(two_clusters):
    C = local_search_medoids(two_clusters, 2, 2, np.random.default_rng(1))
    brute = min(clustering_cost(two_clusters, CenterSet(two_clusters.points[list(pair)]), 2)
                for pair in itertools.combinations(range(8), 2))
    assert len(C) == 2
    assert clustering_cost(two_clusters, C, 2) == pytest.approx(brute)
    assert C.cost_estimate == pytest.approx(brute)


def test_local_search_centers_come_from_support(planted):
    C = local_search_medoids(planted, 3, 2, np.random.default_rng(2))
    support = {tuple(p) for p in planted.points}
    assert all(tuple(c) in support for c in C.centers)


def test_local_search_with_few_distinct_points():
    X = Dataset.from_points([[1, 1], [1, 1], [4, 4]])
    C = local_search_medoids(X, 3, 2, np.random.default_rng(0))
    assert len(C) == 2
    assert C.cost_estimate == 0.0


def test_default_max_iters():
    assert default_max_iters(2, 1, None) == 4
    assert default_max_iters(1, 100, 10) == int(np.ceil(2 * np.log(1000)))


def test_seeding_stops_when_mass_vanishes():
    points = np.array([[1.0], [1.0], [5.0]])
    idx = adaptive_seed_indices(points, np.ones(3), 5, 2, np.random.default_rng(0))
    assert len(idx) == 2
    assert {points[i, 0] for i in idx} == {1.0, 5.0}
    assert adaptive_seed_indices(np.zeros((0, 1)), np.zeros(0), 3, 2, np.random.default_rng(0)) == []


def test_fast_approx_estimate_is_an_upper_bound(planted):
    C = fast_kz_approx(planted, 3, 2, np.random.default_rng(3))
    assert 1 <= len(C) <= 3
    assert C.cost_estimate >= clustering_cost(planted, C, 2) * (1 - 1e-12)


def test_fast_approx_on_empty_input():
    C = fast_kz_approx(Dataset.empty(2), 3, 2, np.random.default_rng(0))
    assert len(C) == 0 and C.cost_estimate == 0.0


def test_constrained_cost_replaces_nearest_center():
    X = Dataset.from_points([[0], [1], [10], [11]])
    C = prepare_swap_bookkeeping(X, CenterSet([[0], [10]]))
    assert C.served_weight.tolist() == [2.0, 2.0]
    assert C.nearest_other.tolist() == [10.0, 10.0]

    candidate, total = constrained_with_center(X, C, [1], 2)
    assert candidate.removed_center == 0
    assert candidate.psi == pytest.approx(2.0)
    assert total == pytest.approx(clustering_cost(X, C, 2) + 2.0)

    batch = constrained_costs(C, np.array([[1.0], [5.0]]), 2, 2.0)
    assert batch.target[0] == NEW_POINT
    assert batch.nearest.tolist() == [0, 0]
    assert np.all(batch.psi >= 0)
    assert np.allclose(batch.total, 2.0 + batch.psi)


def test_constrained_single_center_uses_grid_diameter():
    X = Dataset.from_points([[1, 1], [3, 3]], delta=8)
    C = prepare_swap_bookkeeping(X, CenterSet([[1, 1]]))
    assert C.nearest_other[0] == pytest.approx(np.sqrt(2) * 8)
    candidate, _ = constrained_with_center(X, C, [3, 3], 1)
    assert candidate.removed_center == 0


def test_constrained_requires_centers():
    with pytest.raises(NoCentersError):
        constrained_with_center(Dataset.from_points([[1]]), CenterSet(np.zeros((0, 1))), [1], 2)
    with pytest.raises(ContractError):
        SwapCandidate(0, -1.0)
