"""
Testes da interface de linha de comando (códigos de saída e artefatos).
"""
import json

import numpy as np
import pytest

from src.encoding import deserialize
from src.loaders import decode_sckz
from src.main import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from src.subspace import deserialize_rows


def _read_json(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


@pytest.fixture
def blobs_csv(tmp_path):
    path = tmp_path / "pontos.csv"
    code = main(['--quiet', 'generate', '--kind', 'blobs', '--n', '300', '--d', '2', '--k', '3',
                 '--grid-delta', '1024', '--seed', '5', '--out', str(path)])
    assert code == EXIT_OK
    return path


@pytest.fixture
def matrix_csv(tmp_path):
    path = tmp_path / "matriz.csv"
    code = main(['--quiet', 'generate', '--kind', 'matrix', '--n', '120', '--d', '3', '--scale', '20',
                 '--seed', '5', '--out', str(path)])
    assert code == EXIT_OK
    return path


def _cluster_args(input_path, tmp_path, tag):
    return ['--quiet', 'cluster-stream', '--input', str(input_path), '--k', '3', '--epsilon', '0.5',
            '--grid-delta', '1024', '--n-bound', '400', '--seed', '9',
            '--out', str(tmp_path / f"coreset_{tag}.kzc"),
            '--centers', str(tmp_path / f"centros_{tag}.csv"),
            '--metrics', str(tmp_path / f"metricas_{tag}.json")]


def test_generate_blobs_csv(blobs_csv):
    rows = blobs_csv.read_text().strip().splitlines()
    assert len(rows) == 300
    values = np.array([[float(v) for v in row.split(',')] for row in rows])
    assert values.shape == (300, 2)
    assert values.min() >= 1 and values.max() <= 1024


def test_generate_sckz(tmp_path):
    path = tmp_path / "pontos.bin"
    assert main(['--quiet', 'generate', '--n', '50', '--d', '3', '--k', '2', '--grid-delta', '256',
                 '--seed', '1', '--out', str(path)]) == EXIT_OK
    points = decode_sckz(path.read_bytes())
    assert points.shape == (50, 3)


def test_cluster_stream_writes_artifacts(blobs_csv, tmp_path):
    assert main(_cluster_args(blobs_csv, tmp_path, "a")) == EXIT_OK

    encoded = deserialize((tmp_path / "coreset_a.kzc").read_bytes())
    assert encoded.d == 2
    assert len(encoded) > 0

    centers = (tmp_path / "centros_a.csv").read_text().strip().splitlines()
    assert centers[0] == "x0,x1"
    assert 1 <= len(centers) - 1 <= 3

    metrics = _read_json(tmp_path / "metricas_a.json")
    assert metrics['command'] == 'cluster-stream'
    assert metrics['n'] == 300
    assert metrics['schema_version'] == 1
    assert metrics['encoded_records'] == len(encoded)
    assert 'total_seconds' not in metrics
    assert 'update_seconds' not in metrics


def test_cluster_stream_is_deterministic(blobs_csv, tmp_path):
    assert main(_cluster_args(blobs_csv, tmp_path, "a")) == EXIT_OK
    assert main(_cluster_args(blobs_csv, tmp_path, "b")) == EXIT_OK
    assert (tmp_path / "coreset_a.kzc").read_bytes() == (tmp_path / "coreset_b.kzc").read_bytes()
    assert (tmp_path / "centros_a.csv").read_text() == (tmp_path / "centros_b.csv").read_text()


def test_cluster_stream_timings_flag(blobs_csv, tmp_path):
    args = _cluster_args(blobs_csv, tmp_path, "t") + ['--timings']
    assert main(args) == EXIT_OK
    metrics = _read_json(tmp_path / "metricas_t.json")
    assert metrics['total_seconds'] >= 0
    assert metrics['update_seconds']['count'] == 300


def test_cluster_stream_state_roundtrip(blobs_csv, tmp_path):
    state = tmp_path / "estado.pipe"
    args = _cluster_args(blobs_csv, tmp_path, "s") + ['--state-out', str(state)]
    assert main(args) == EXIT_OK
    assert state.read_bytes()[:4] == b"PIPE"

    empty = tmp_path / "vazio.csv"
    empty.write_text("")
    resumed = ['--quiet', 'cluster-stream', '--input', str(empty), '--dim', '2', '--grid-delta', '1024',
               '--state-in', str(state), '--metrics', str(tmp_path / "retomada.json")]
    assert main(resumed) == EXIT_OK
    assert _read_json(tmp_path / "retomada.json")['n'] == 300


def test_cluster_stream_empty_input(tmp_path):
    empty = tmp_path / "vazio.csv"
    empty.write_text("")
    metrics = tmp_path / "m.json"
    code = main(['--quiet', 'cluster-stream', '--input', str(empty), '--dim', '2', '--k', '2',
                 '--out', str(tmp_path / "c.kzc"), '--metrics', str(metrics)])
    assert code == EXIT_OK
    assert _read_json(metrics)['n'] == 0
    assert len(deserialize((tmp_path / "c.kzc").read_bytes())) == 0


def test_cluster_stream_missing_file(tmp_path):
    assert main(['--quiet', 'cluster-stream', '--input', str(tmp_path / "nada.csv")]) == EXIT_DATA


def test_cluster_stream_malformed_csv(tmp_path):
    bad = tmp_path / "ruim.csv"
    bad.write_text("1,2\n3,abc\n")
    assert main(['--quiet', 'cluster-stream', '--input', str(bad)]) == EXIT_DATA


def test_cluster_stream_point_outside_grid(tmp_path):
    bad = tmp_path / "fora.csv"
    bad.write_text("1,2\n3,5000\n")
    assert main(['--quiet', 'cluster-stream', '--input', str(bad), '--grid-delta', '1024']) == EXIT_DATA


def test_unknown_format_is_data_error(tmp_path):
    weird = tmp_path / "pontos.dat"
    weird.write_bytes(b"\x00\x01\x02\x03")
    assert main(['--quiet', 'cluster-stream', '--input', str(weird)]) == EXIT_DATA


def test_argument_errors_are_usage_errors(tmp_path):
    assert main(['--quiet', 'cluster-stream']) == EXIT_USAGE
    assert main(['--quiet', 'inexistente']) == EXIT_USAGE
    assert main(['--quiet', 'oracle', '--input', 'x.csv', '--kind', 'outro']) == EXIT_USAGE


def test_invalid_parameters_are_usage_errors(blobs_csv):
    assert main(['--quiet', 'cluster-stream', '--input', str(blobs_csv), '--grid-delta', '1024',
                 '--epsilon', '2']) == EXIT_USAGE
    assert main(['--quiet', '--threads', '0', 'solve', '--input', str(blobs_csv)]) == EXIT_USAGE


def test_embed_stream_rejects_p_below_one(matrix_csv):
    assert main(['--quiet', 'embed-stream', '--input', str(matrix_csv), '--p', '0.5']) == EXIT_USAGE


def test_embed_stream_and_eval(matrix_csv, tmp_path):
    artifact = tmp_path / "emb.lpe"
    code = main(['--quiet', 'embed-stream', '--input', str(matrix_csv), '--p', '2', '--epsilon', '0.5',
                 '--n-bound', '200', '--seed', '3', '--out', str(artifact),
                 '--metrics', str(tmp_path / "emb.json")])
    assert code == EXIT_OK
    encoded = deserialize_rows(artifact.read_bytes())
    assert encoded.d == 3
    assert _read_json(tmp_path / "emb.json")['command'] == 'embed-stream'

    report = tmp_path / "aval.json"
    assert main(['--quiet', 'eval', '--data', str(matrix_csv), '--artifact', str(artifact),
                 '--metrics', str(report)]) == EXIT_OK
    result = _read_json(report)
    assert result['mode'] == 'embedding'
    assert result['method'] == 'spectral'
    assert result['max_error'] >= 0


def test_eval_clustering_artifact(blobs_csv, tmp_path):
    assert main(_cluster_args(blobs_csv, tmp_path, "e")) == EXIT_OK
    report = tmp_path / "aval.json"
    code = main(['--quiet', 'eval', '--data', str(blobs_csv), '--artifact', str(tmp_path / "coreset_e.kzc"),
                 '--k', '3', '--queries', '6', '--local-search-sets', '1', '--seed', '2',
                 '--metrics', str(report)])
    assert code == EXIT_OK
    result = _read_json(report)
    assert result['mode'] == 'clustering'
    assert result['n_queries'] == 7
    assert np.isfinite(result['max_error'])


def test_eval_rejects_unknown_artifact(blobs_csv, tmp_path):
    junk = tmp_path / "lixo.bin"
    junk.write_bytes(b"XXXX0000")
    assert main(['--quiet', 'eval', '--data', str(blobs_csv), '--artifact', str(junk)]) == EXIT_DATA


def test_oracle_medoids_on_small_csv(tmp_path):
    data = tmp_path / "pequeno.csv"
    data.write_text("0,0\n0,0\n10,0\n")
    out = tmp_path / "oraculo.json"
    code = main(['--quiet', 'oracle', '--input', str(data), '--kind', 'opt', '--k', '1', '--out', str(out)])
    assert code == EXIT_OK
    result = _read_json(out)
    assert result['kind'] == 'opt'
    assert result['cost'] == pytest.approx(10.0)
    assert result['centers'] == [[0.0, 0.0]]


def test_oracle_degenerate_instance_is_data_error(tmp_path):
    data = tmp_path / "duplicado.csv"
    data.write_text("1,1\n1,1\n")
    code = main(['--quiet', 'oracle', '--input', str(data), '--kind', 'medoids', '--k', '1',
                 '--index', '0'])
    assert code == EXIT_DATA


def test_oracle_lp_identity(tmp_path):
    data = tmp_path / "identidade.csv"
    data.write_text("1,0\n0,1\n")
    out = tmp_path / "lp.json"
    assert main(['--quiet', 'oracle', '--input', str(data), '--kind', 'lp', '--p', '2',
                 '--out', str(out)]) == EXIT_OK
    values = [entry['value'] for entry in _read_json(out)['values']]
    assert values == pytest.approx([1.0, 1.0])


def test_solve_writes_centers(blobs_csv, tmp_path):
    centers = tmp_path / "centros.csv"
    metrics = tmp_path / "solve.json"
    code = main(['--quiet', 'solve', '--input', str(blobs_csv), '--k', '3', '--method', 'fast',
                 '--centers', str(centers), '--metrics', str(metrics)])
    assert code == EXIT_OK
    result = _read_json(metrics)
    assert result['n'] == 300
    assert result['cost'] > 0
    assert centers.read_text().startswith("x0,x1\n")


def test_solve_empty_input_is_data_error(tmp_path):
    empty = tmp_path / "vazio.csv"
    empty.write_text("")
    assert main(['--quiet', 'solve', '--input', str(empty)]) == EXIT_DATA


def test_bench_space_small(tmp_path):
    table = tmp_path / "bench.csv"
    metrics = tmp_path / "bench.json"
    code = main(['--quiet', 'bench', '--kind', 'space', '--sizes', '200', '400', '--k', '2',
                 '--grid-delta', '1024', '--csv', str(table), '--metrics', str(metrics)])
    assert code == EXIT_OK
    summary = _read_json(metrics)
    assert [row['n'] for row in summary['results']] == [200, 400]
    assert 0.0 <= summary['peak_bytes_variation'] <= 1.0
    assert table.read_text().splitlines()[0].startswith("n,")
