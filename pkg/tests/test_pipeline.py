import math

import numpy as np
import pytest

from src.errors import ContractError, FormatError, InputDataError
from src.geometry import ClusteringParams, Dataset, clustering_cost
from src.pipeline import (
    ClusteringPipeline,
    JLProjection,
    PipelineConfig,
    config_for_dataset,
    jl_project,
    offline_cluster,
    stream_update,
)
from src.solvers import local_search_medoids


def make_config(**overrides):
    options = dict(k=3, d=2, epsilon=0.5, seed=11, grid_delta=1024, n_bound=400)
    options.update(overrides)
    return PipelineConfig(**options)


def run(config, X):
    pipeline = ClusteringPipeline(config)
    for point, weight in zip(X.points, X.weights):
        pipeline.stream_update(point, float(weight))
    return pipeline


def test_config_validation():
    with pytest.raises(ContractError):
        make_config(k=0)
    with pytest.raises(ContractError):
        make_config(d=0)
    with pytest.raises(ContractError):
        make_config(alpha=1.0)
    with pytest.raises(ContractError):
        make_config(block_size=0)


def test_config_derived_values():
    config = make_config(h_max=5)
    assert config.level_epsilon == pytest.approx(0.5 / 20)
    assert config.level_fail_prob == pytest.approx(0.01 * 0.5 / math.log2(400 * 1024))
    assert config.jl_dimension == math.ceil(8 * math.log(400))
    assert not config.jl_enabled
    assert config.effective_batch_size == 3
    assert config.constant_block_size == 24
    assert PipelineConfig.from_dict(config.to_dict()) == config


def test_jl_projection():
    assert JLProjection(3, 10).is_identity
    projection = JLProjection(500, 200, np.random.default_rng(0))
    assert projection.out_dim == 200
    x = np.random.default_rng(1).normal(size=500)
    ratio = np.linalg.norm(jl_project(x, projection)) / np.linalg.norm(x)
    assert 0.8 < ratio < 1.2
    assert projection.project(np.ones((4, 500))).shape == (4, 200)
    with pytest.raises(ContractError):
        JLProjection(0, 3)


def test_stream_produces_weighted_coreset(planted):
    pipeline = run(make_config(), planted)
    S = pipeline.current_coreset()
    metrics = pipeline.metrics()
    assert metrics['n'] == 400
    assert metrics['sampled_stream'] <= metrics['intermediate_stream'] <= 400
    assert len(S) > 0 and np.all(S.weights > 0)
    assert metrics['coreset_size'] == len(S)
    assert metrics['reduce_events'] == pipeline.main.reduce_count
    assert 'update_seconds' not in metrics


def test_small_lambda_discards_points(planted):
    pipeline = run(make_config(lambda_scale=1e-3), planted)
    assert pipeline.metrics()['sampled_stream'] < 400


def test_centers_are_close_to_full_data_solution(planted):
    pipeline = run(make_config(), planted)
    centers = pipeline.current_centers()
    assert 1 <= len(centers) <= 3
    assert pipeline.current_centers() is centers
    reference = local_search_medoids(planted, 3, 2, np.random.default_rng(0))
    assert clustering_cost(planted, centers, 2) <= 2.0 * clustering_cost(planted, reference, 2)


def test_empty_pipeline():
    pipeline = ClusteringPipeline(make_config())
    assert len(pipeline.current_coreset()) == 0
    assert len(pipeline.current_centers()) == 0
    assert pipeline.metrics()['n'] == 0


def test_invalid_updates():
    pipeline = ClusteringPipeline(make_config())
    with pytest.raises(InputDataError):
        pipeline.stream_update([0, 5])
    with pytest.raises(InputDataError):
        pipeline.stream_update([5, 5, 5])
    with pytest.raises(InputDataError):
        pipeline.stream_update([1.5, 5])
    with pytest.raises(ContractError):
        pipeline.stream_update([5, 5], weight=0.0)


def test_n_bound_doubles_when_exceeded():
    pipeline = ClusteringPipeline(make_config(n_bound=2))
    for i in range(5):
        stream_update(pipeline, [i + 1, i + 1])
    assert pipeline.n_bound == 8
    assert pipeline.n_bound_doublings == 2


def test_same_seed_same_state(planted):
    first = run(make_config(), planted.subset(np.arange(150)))
    second = run(make_config(), planted.subset(np.arange(150)))
    assert first.snapshot() == second.snapshot()
    assert first.metrics() == second.metrics()


def test_snapshot_resume_matches_uninterrupted_run(planted):
    head, tail = planted.subset(np.arange(130)), planted.subset(np.arange(130, 260))
    uninterrupted = run(make_config(), planted.subset(np.arange(260)))
    resumed = ClusteringPipeline.from_snapshot(run(make_config(), head).snapshot())
    for point in tail.points:
        resumed.stream_update(point)
    assert resumed.snapshot() == uninterrupted.snapshot()
    assert np.array_equal(resumed.current_coreset().points, uninterrupted.current_coreset().points)


def test_snapshot_rejects_garbage(planted):
    payload = run(make_config(), planted.subset(np.arange(20))).snapshot()
    with pytest.raises(FormatError):
        ClusteringPipeline.from_snapshot(b"JUNK" + payload[4:])
    with pytest.raises(FormatError):
        ClusteringPipeline.from_snapshot(payload[:6])
    with pytest.raises(FormatError):
        ClusteringPipeline.from_snapshot(payload + b"\x01")


def test_timings_only_when_requested(planted):
    pipeline = run(make_config(record_timings=True), planted.subset(np.arange(10)))
    assert pipeline.metrics()['update_seconds']['count'] == 10


def test_config_for_dataset_and_offline_cluster(planted):
    params = ClusteringParams(3, 2.0, 0.5, 0.01, 5)
    config = config_for_dataset(planted, params)
    assert config.grid_delta == 1024
    assert config.n_bound == 400
    assert config.d == 2
    centers = offline_cluster(planted.subset(np.arange(100)), params)
    assert 1 <= len(centers) <= 3
    with pytest.raises(ContractError):
        offline_cluster(Dataset.from_points(np.ones((4, 3))), config)
