import math

import numpy as np
import pytest

from src.errors import ContractError
from src.geometry import Dataset
from src.oracle import exact_medoids_sensitivity
from src.quadtree import (
    CrudeQuadTree,
    RoughSensEstimator,
    branching_for,
    build_tree_checked,
    levels_for,
    rough_claimed_factor,
    rough_sens,
)
from src.sensitivity import Quality


def test_levels_and_branching():
    assert levels_for(64, 2) == 6
    assert levels_for(65, 2) == 7
    assert levels_for(1, 4) == 0
    assert branching_for(16, 0.25) == 2
    assert branching_for(100, 0.25) == 4
    assert branching_for(0, 0.25) == 2
    with pytest.raises(ContractError):
        levels_for(10, 1)


def test_tree_dist_uses_first_joining_level():
    tree = CrudeQuadTree(np.zeros(1), 2, 3)
    assert tree.tree_dist([1.0], [2.0]) == 4.0
    assert tree.tree_dist([1.0], [1.0]) == 0.0
    # nunca se juntam até o nível L: distância da raiz
    assert tree.tree_dist([1.0], [100.0]) == 16.0


def test_tree_dist_dominates_true_distance(planted, rng):
    tree = build_tree_checked(planted.points, 4, 8.0, rng, delta=planted.delta)
    x = planted.points[0]
    true = np.linalg.norm(planted.points - x, axis=1)
    assert np.all(tree.tree_dist_to(planted.points, x) >= true - 1e-9)


def test_margin_violations():
    tree = CrudeQuadTree(np.zeros(1), 2, 0)
    assert tree.margin_violations(np.array([[0.0]]), 4.0) == 1
    assert tree.margin_violations(np.array([[0.5]]), 4.0) == 0
    # folga 0.2 < side/kappa = 0.25
    assert tree.margin_violations(np.array([[0.2]]), 4.0) == 1
    assert tree.margin_violations(np.array([[0.25]]), 4.0) == 0


def test_build_tree_accepts_with_generous_margin(rng):
    points = np.array([[1.0], [4.0], [9.0]])
    tree = build_tree_checked(points, 2, 1000.0, rng)
    assert tree.accepted
    assert tree.violations == 0
    assert tree.warning is None
    assert np.all((tree.shift >= 0) & (tree.shift < 2.0 ** tree.levels))


def test_build_tree_reports_unmet_margin(rng):
    points = np.array([[0.0], [1 / 3], [2 / 3]])
    tree = build_tree_checked(points, 2, 3.0, rng, max_retries=2)
    assert not tree.accepted
    assert tree.attempts == 3
    assert tree.warning is not None
    assert tree.dilation >= 1.0


def test_build_tree_rejects_small_kappa(rng):
    with pytest.raises(ContractError):
        build_tree_checked(np.ones((2, 2)), 2, 2.0, rng)


def test_assign_centers_prefers_lower_index_on_ties():
    tree = CrudeQuadTree(np.zeros(1), 2, 3)
    labels, dists = tree.assign_centers(np.array([[1.0], [6.0]]), np.array([[1.0], [1.0], [6.0]]))
    assert labels.tolist() == [0, 2]
    assert dists.tolist() == [0.0, 0.0]


def test_rough_claimed_factor():
    assert rough_claimed_factor(2, 4.0, True, 3) == 2.0 ** 16 * 4.0 ** 4
    assert rough_claimed_factor(2, 4.0, False, 3) == 2.0 ** 16 * 4.0 ** 4 * 9


def test_rough_sens_on_coincident_support():
    B = Dataset.from_points([[2, 2], [2, 2]], [1.0, 1.0])
    estimates = rough_sens(Dataset.empty(2), B, 1, 2, np.random.default_rng(0))
    assert [e.value for e in estimates] == pytest.approx([0.5, 0.5])
    assert estimates[0].quality == Quality.EXACT


def test_rough_sens_within_claimed_factor(small_instance):
    Z = small_instance.subset(np.arange(8))
    B = small_instance.subset(np.arange(8, 12))
    estimates = rough_sens(Z, B, 2, 2, np.random.default_rng(1))
    assert len(estimates) == 4
    for offset, estimate in enumerate(estimates):
        tau = exact_medoids_sensitivity(small_instance, 8 + offset, 2, 2)
        assert estimate.quality == Quality.CRUDE
        assert 0 < estimate.value <= 1
        assert estimate.value >= tau / estimate.claimed_factor


def test_rough_estimator_values(planted):
    estimator = RoughSensEstimator(3, 2, np.random.default_rng(2), n_bound=1000)
    values = estimator.values(planted.subset(np.arange(60)), planted.subset(np.arange(60, 63)))
    assert values.shape == (3,)
    assert np.all((values > 0) & (values <= 1))


def test_accepted_tree_dilation_is_bounded():
    generator = np.random.default_rng(21)
    points = generator.integers(1, 256, size=(10, 2)).astype(float)
    tree = build_tree_checked(points, 4, 1000.0, generator, delta=256)
    assert tree.accepted
    assert tree.measure_dilation(points) <= 1000.0 * math.sqrt(2) * 4


def _contraction_violations(n_sources, n_targets, seed):
    generator = np.random.default_rng(seed)
    points = generator.integers(1, 1025, size=(n_sources + n_targets, 2)).astype(float)
    tree = build_tree_checked(points, 4, 8.0, generator, delta=1024)
    sources, targets = points[:n_sources], points[n_sources:]
    violations = 0
    for x in sources:
        true = np.linalg.norm(targets - x, axis=1)
        violations += int(np.sum(tree.tree_dist_to(targets, x) < true - 1e-9))
    return violations


def test_tree_dist_never_contracts_random_pairs():
    assert _contraction_violations(40, 500, seed=5) == 0


@pytest.mark.slow
def test_tree_dist_never_contracts_many_pairs():
    assert _contraction_violations(200, 500, seed=6) == 0
