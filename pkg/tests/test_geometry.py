import numpy as np
import pytest

from src.errors import ContractError, InputDataError, NoCentersError
from src.geometry import (
    CenterSet,
    ClusteringParams,
    Dataset,
    WeightedPoint,
    assign_nearest,
    clustering_cost,
    dist,
    prepare_swap_bookkeeping,
    validate_grid_point,
)
from src.utils.rng import derive_rng
from src.utils.rounding import exponent_limit, powers_to_values, round_to_powers
from src.utils.streaming_stats import StreamingStat


def test_dist_basic_cases():
    assert dist([0, 0], [3, 4]) == 5.0
    assert dist([2, 7], [2, 7]) == 0.0


def test_dist_matches_direct_sum(rng):
    a, b = rng.normal(size=5), rng.normal(size=5)
    assert dist(a, b) == pytest.approx(np.sqrt(sum((x - y) ** 2 for x, y in zip(a, b))))
    assert dist(a, b) == dist(b, a)


def test_dist_dimension_mismatch():
    with pytest.raises(ContractError):
        dist([1, 2], [1, 2, 3])


def test_clustering_cost_examples():
    X = Dataset.from_points([[0, 0], [3, 4]])
    assert clustering_cost(X, CenterSet([[0, 0]]), 2) == pytest.approx(25.0)
    assert clustering_cost(X, CenterSet([[0, 0], [3, 4]]), 1) == 0.0


def test_clustering_cost_matches_double_loop(rng):
    X = Dataset.from_points(rng.normal(size=(50, 2)), rng.uniform(0.5, 2, size=50))
    C = CenterSet(rng.normal(size=(3, 2)))
    expected = 0.0
    for point, weight in zip(X.points, X.weights):
        expected += weight * min(np.linalg.norm(point - c) for c in C.centers)
    assert clustering_cost(X, C, 1) == pytest.approx(expected)


def test_clustering_cost_properties(rng):
    X = Dataset.from_points(rng.normal(size=(40, 3)))
    C = CenterSet(rng.normal(size=(2, 3)))
    more = CenterSet(np.vstack([C.centers, rng.normal(size=(2, 3))]))
    assert clustering_cost(X, more, 2) <= clustering_cost(X, C, 2)
    doubled = Dataset(X.points, 2 * X.weights)
    assert clustering_cost(doubled, C, 2) == pytest.approx(2 * clustering_cost(X, C, 2))


def test_empty_centers_raise_no_centers():
    X = Dataset.from_points([[1, 1]])
    with pytest.raises(NoCentersError, match="no centers"):
        clustering_cost(X, CenterSet(np.zeros((0, 2))), 2)


def test_assign_nearest_tie_goes_to_lowest_index():
    X = Dataset.from_points([[5, 0], [1, 0], [9, 0]])
    labels = assign_nearest(X, CenterSet([[0, 0], [10, 0]]))
    assert labels.tolist() == [0, 0, 1]
    assert assign_nearest(X, CenterSet([[3, 3]])).tolist() == [0, 0, 0]


def test_assign_nearest_is_minimizing(rng):
    X = Dataset.from_points(rng.normal(size=(30, 2)))
    C = CenterSet(rng.normal(size=(4, 2)))
    labels = assign_nearest(X, C)
    for point, label in zip(X.points, labels):
        chosen = np.linalg.norm(point - C.centers[label])
        assert all(chosen <= np.linalg.norm(point - c) + 1e-12 for c in C.centers)


def test_prepare_swap_bookkeeping_examples():
    X = Dataset.from_points([[0, 0], [10, 0]])
    C = prepare_swap_bookkeeping(X, CenterSet([[0, 0], [10, 0]]))
    assert C.served_weight.tolist() == [1.0, 1.0]
    assert C.nearest_other.tolist() == [10.0, 10.0]

    heavy = Dataset.from_points([[0, 0], [1, 0]], [3.0, 4.0])
    C = prepare_swap_bookkeeping(heavy, CenterSet([[0, 0], [100, 0]]))
    assert C.served_weight.tolist() == [7.0, 0.0]


def test_singleton_bookkeeping_uses_grid_diameter():
    X = Dataset.from_points([[1, 1], [2, 2]], delta=100)
    C = prepare_swap_bookkeeping(X, CenterSet([[1, 1]]))
    assert C.nearest_other[0] == pytest.approx(np.sqrt(2) * 100)
    assert C.served_weight.sum() == pytest.approx(X.total_weight)


def test_generalized_triangle_inequality(rng):
    x, y, w = rng.normal(size=(3, 2000, 3))
    for z in (1, 2, 3):
        lhs = np.linalg.norm(x - y, axis=1) ** z
        rhs = 2 ** (z - 1) * (np.linalg.norm(x - w, axis=1) ** z + np.linalg.norm(w - y, axis=1) ** z)
        assert np.all(lhs <= rhs + 1e-9)


def test_grid_point_validation():
    assert validate_grid_point([1, 5], 5).tolist() == [1.0, 5.0]
    with pytest.raises(InputDataError):
        validate_grid_point([0, 3], 5)
    with pytest.raises(InputDataError):
        validate_grid_point([1.5, 3], 5)


def test_params_and_weights_validation():
    with pytest.raises(ContractError):
        ClusteringParams(k=0)
    with pytest.raises(ContractError):
        ClusteringParams(k=2, epsilon=1.5)
    with pytest.raises(ContractError):
        WeightedPoint(np.zeros(2), 0.0)
    with pytest.raises(ContractError):
        Dataset.from_points([[1, 1]], [-1.0])


def test_support_merges_duplicates_in_first_occurrence_order():
    X = Dataset.from_points([[3, 3], [1, 1], [3, 3]], [1.0, 2.0, 4.0])
    support, mass, labels = X.support()
    assert support.tolist() == [[3, 3], [1, 1]]
    assert mass.tolist() == [5.0, 2.0]
    assert labels.tolist() == [0, 1, 0]


def test_derive_rng_is_keyed_and_reproducible():
    a = derive_rng(42, "module", 3).random(4)
    b = derive_rng(42, "module", 3).random(4)
    c = derive_rng(42, "module", 4).random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_round_to_powers_ratio_bound(rng):
    eps_prime = 0.01
    values = rng.normal(scale=1000, size=500)
    limit = exponent_limit(eps_prime, 1e6)
    signs, exps = round_to_powers(values, eps_prime, limit)
    decoded = powers_to_values(signs, exps, eps_prime)
    ratio = decoded / values
    assert np.all(ratio <= np.sqrt(1 + eps_prime) + 1e-12)
    assert np.all(ratio >= 1 / np.sqrt(1 + eps_prime) - 1e-12)


def test_round_to_powers_zero_sentinel():
    signs, exps = round_to_powers(np.array([0.0, 1e-300]), 0.1, 10)
    assert signs.tolist() == [0, 0]
    assert exps.tolist() == [0, 0]


def test_streaming_stat_summary():
    stat = StreamingStat()
    for value in [1e-3, 2e-3, 3e-3]:
        stat.add(value)
    summary = stat.summary()
    assert summary['count'] == 3
    assert summary['mean'] == pytest.approx(2e-3)
    assert sum(summary['hist_counts']) == 3


def test_streaming_stat_matches_numpy_with_large_offset(rng):
    values = 1e9 + rng.normal(0.0, 1.0, size=500)
    stat = StreamingStat()
    for value in values:
        stat.add(float(value))
    assert stat.mean() == pytest.approx(np.mean(values), rel=1e-12)
    assert stat.std() == pytest.approx(np.std(values, ddof=1), rel=1e-6)
    assert stat.summary()['overflow'] == 500


def test_streaming_stat_empty_and_single():
    stat = StreamingStat()
    assert stat.mean() == 0.0 and stat.std() == 0.0
    stat.add(0.5)
    assert stat.mean() == 0.5 and stat.std() == 0.0
