import logging
import math

import numpy as np
import pytest

from src.errors import ContractError, FormatError
from src.geometry import Dataset
from src.merge_reduce import ClusteringCodec, MergeReduceState, mr_insert, mr_query, reduce_coreset, reduce_target_size


@pytest.fixture
def codec():
    return ClusteringCodec(2, 3, 2, 0.5, 0.1, 0.01, n_bound=1000, delta=1024, target=50)


def feed(state, X, chunk=25):
    for start in range(0, len(X), chunk):
        state.insert(X.subset(np.arange(start, min(start + chunk, len(X)))))
    return state


def test_reduce_target_size():
    expected = math.ceil((2 / 0.25) * (2 + math.log(10)) * math.log(2))
    assert reduce_target_size(2, 2, 0.5, 0.1, constant=1.0) == expected
    assert reduce_target_size(3, 2, 0.5, 0.1, constant=1e-9) == 12


def test_reduce_keeps_small_inputs(planted):
    part = planted.subset(np.arange(30))
    assert reduce_coreset(part, 3, 2, 0.5, 0.1, np.random.default_rng(0), target=50) is part


def test_reduce_collapses_duplicates():
    X = Dataset.from_points([[1, 1]] * 10 + [[5, 5]] * 10)
    reduced = reduce_coreset(X, 1, 2, 0.5, 0.1, np.random.default_rng(0), target=3)
    assert len(reduced) == 2
    assert reduced.total_weight == pytest.approx(20.0)


def test_reduce_samples_down_to_target(planted):
    reduced = reduce_coreset(planted, 3, 2, 0.5, 0.1, np.random.default_rng(1), target=50)
    assert 0 < len(reduced) <= 50
    assert np.all(reduced.weights > 0)
    originals = {tuple(p) for p in planted.points}
    assert all(tuple(p) in originals for p in reduced.points)
    assert 0.5 * len(planted) <= reduced.total_weight <= 2.0 * len(planted)


def test_reduce_is_deterministic(planted):
    a = reduce_coreset(planted, 3, 2, 0.5, 0.1, np.random.default_rng(2), target=50)
    b = reduce_coreset(planted, 3, 2, 0.5, 0.1, np.random.default_rng(2), target=50)
    assert np.array_equal(a.points, b.points) and np.array_equal(a.weights, b.weights)


def test_reduce_rejects_bad_precision(planted):
    with pytest.raises(ContractError):
        reduce_coreset(planted, 3, 2, 1.5, 0.1, np.random.default_rng(0))


def test_tree_behaves_like_a_binary_counter(codec, planted):
    state = feed(MergeReduceState(codec, 50, seed=3), planted)
    assert state.inserted == 400
    assert state.level_bitmap == 0b1000
    assert state.height == 3
    assert state.reduce_count == 7
    assert state.generation == 8
    assert len(state.buffer) == 0
    assert 0 < len(state.query()) <= 50


def test_partial_block_stays_in_buffer(codec, planted):
    state = MergeReduceState(codec, 50)
    state.insert(planted.subset(np.arange(30)))
    assert not state.buckets
    assert len(state.query()) == 30
    assert state.insert(Dataset.empty(2)) is state


def test_peak_bytes_are_tracked(codec, planted):
    state = feed(MergeReduceState(codec, 50), planted)
    assert state.peak_record_bytes >= state.live_record_bytes() > 0
    assert state.peak_overhead_bytes >= state.live_overhead_bytes() > 0


def test_snapshot_restores_and_continues_identically(codec, planted):
    first, rest = planted.subset(np.arange(175)), planted.subset(np.arange(175, 400))
    state = feed(MergeReduceState(codec, 50, seed=4), first)
    restored = MergeReduceState.from_bytes(state.to_bytes(), codec, seed=4)
    assert restored.generation == state.generation
    assert restored.reduce_count == state.reduce_count
    assert np.array_equal(restored.query().points, state.query().points)

    feed(state, rest)
    feed(restored, rest)
    assert restored.to_bytes() == state.to_bytes()


def test_snapshot_errors(codec, planted):
    payload = feed(MergeReduceState(codec, 50), planted.subset(np.arange(120))).to_bytes()
    with pytest.raises(FormatError):
        MergeReduceState.from_bytes(payload + b"\x00", codec)
    with pytest.raises(FormatError):
        MergeReduceState.from_bytes(b"NOPE" + payload[4:], codec)
    with pytest.raises(FormatError):
        MergeReduceState.from_bytes(payload, ClusteringCodec(3, 3, 2, 0.5, 0.1, 0.01))
    with pytest.raises(FormatError):
        MergeReduceState.from_bytes(payload[:20], codec)


def test_block_size_must_be_positive(codec):
    with pytest.raises(ContractError):
        MergeReduceState(codec, 0)


def test_height_above_limit_warns_once(codec, planted, caplog):
    with caplog.at_level(logging.WARNING, logger="src.merge_reduce.state"):
        state = feed(MergeReduceState(codec, 50, max_height=1), planted)
    assert state.height == 3
    assert sum("acima do limite" in r.getMessage() for r in caplog.records) == 1


def test_functional_helpers(codec, planted):
    state = mr_insert(MergeReduceState(codec, 50), planted.subset(np.arange(10)))
    assert len(mr_query(state)) == 10
