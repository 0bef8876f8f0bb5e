"""
Interface de linha de comando do streamkit.

Comandos: cluster-stream, embed-stream, eval, oracle, solve, generate e bench.
Códigos de saída: 0 sucesso, 2 uso inválido, 3 erro de dados ou de recurso.
"""
import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from sklearn.datasets import make_blobs

from src.config import (
    ALPHA_DEFAULT,
    DEFAULT_DELTA,
    DEFAULT_ENTRY_BOUND,
    DEFAULT_EPSILON,
    DEFAULT_GRID_DELTA,
    DEFAULT_K,
    DEFAULT_N_BOUND,
    DEFAULT_P,
    DEFAULT_Z,
    EMBED_LAMBDA_SCALE_DEFAULT,
    GRID_RESOLUTION_DEFAULT,
    H_MAX_DEFAULT,
    IOTA_DEFAULT,
    LAMBDA_SCALE_DEFAULT,
    LP_ORACLE_DIRECTIONS,
    MEDOID_SUBSET_GUARD,
    METRICS_SCHEMA_VERSION,
    resolve_seed,
)
from src.encoding import decode, deserialize, encode, measure_bits, serialize
from src.errors import (
    ContractError,
    DegenerateInstanceError,
    InputDataError,
    ResourceGuardError,
    UsageError,
)
from src.geometry.metrics import clustering_cost
from src.loaders import metrics_json, select_loader, write_bytes, write_centers_csv, write_metrics_json
from src.loaders import write_points_csv, write_sckz
from src.oracle import exact_lp_sensitivity, exact_medoids_opt, exact_medoids_sensitivity
from src.oracle import grid_clustering_sensitivity
from src.pipeline import ClusteringPipeline, PipelineConfig
from src.reporting import bench_plot, evaluate_clustering, evaluate_embedding, save_figure
from src.sensitivity.gap import medoids_vs_clustering_gap
from src.solvers import fast_kz_approx, local_search_medoids
from src.subspace import EmbeddingConfig, EmbeddingPipeline, decode_rows, deserialize_rows, serialize_rows
from src.utils.rng import derive_rng

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True
    )


def _emit_metrics(metrics: Dict[str, Any], path: Optional[str]) -> None:
    if path:
        write_metrics_json(path, metrics)
    else:
        sys.stdout.write(metrics_json(metrics))


def _load_input(path: str, weighted: bool):
    loader = select_loader(path, weighted)
    loader.get_data()
    return loader


def _read_bytes(path: str) -> bytes:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Arquivo não encontrado: {path}")
    with open(path, 'rb') as f:
        return f.read()


# ---------------------------------------------------------------- cluster-stream

def cmd_cluster_stream(args) -> int:
    """Executa o pipeline de clustering sobre o arquivo e grava coreset, centros e métricas."""
    loader = _load_input(args.input, args.weighted)
    X = loader.to_dataset(args.grid_delta)
    d = X.d if loader.d else args.dim

    if args.state_in:
        pipeline = ClusteringPipeline.from_snapshot(_read_bytes(args.state_in))
        if pipeline.config.d != d:
            raise InputDataError(f"snapshot com d={pipeline.config.d}; entrada com d={d}")
        config = pipeline.config
    else:
        config = PipelineConfig(
            k=args.k, d=d, z=args.z, epsilon=args.epsilon, delta=args.delta, seed=args.seed,
            grid_delta=args.grid_delta, n_bound=args.n_bound, iota=args.iota, alpha=args.alpha,
            lambda_scale=args.lambda_scale, use_jl=args.jl, use_rough_filter=not args.no_rough_filter,
            batch_size=args.batch_size, h_max=args.h_max, block_size=args.block_size,
            record_timings=args.timings)
        pipeline = ClusteringPipeline(config)

    started = time.perf_counter()
    for point, weight in zip(X.points, X.weights):
        pipeline.stream_update(point, float(weight))
    elapsed = time.perf_counter() - started
    logger.info(f"cluster-stream: {len(X)} pontos processados")

    S = pipeline.current_coreset()
    centers = pipeline.current_centers()
    E = encode(S, centers if len(centers) else np.zeros((0, d)), config.eps_prime, pipeline.n_bound,
               config.grid_delta)
    if args.out:
        write_bytes(args.out, serialize(E))
    if args.centers and len(centers):
        write_centers_csv(args.centers, centers.centers)
    if args.state_out:
        write_bytes(args.state_out, pipeline.snapshot())

    metrics = pipeline.metrics()
    metrics.update({
        'command': 'cluster-stream',
        'seed': config.seed,
        'config': config.to_dict(),
        'input': loader.get_metadata(),
        'encoded_records': len(E),
        'bits': asdict(measure_bits(E)),
        'centers_cost_estimate': centers.cost_estimate,
    })
    if args.timings:
        metrics['total_seconds'] = elapsed
    _emit_metrics(metrics, args.metrics)
    return EXIT_OK


# ---------------------------------------------------------------- embed-stream

def cmd_embed_stream(args) -> int:
    """Executa o pipeline de embedding Lp e grava o conjunto de linhas LPE1."""
    if args.p < 1:
        raise UsageError(f"--p deve ser >= 1: {args.p}")
    loader = _load_input(args.input, False)
    rows = loader.values()
    d = loader.d or args.dim
    config = EmbeddingConfig(
        d=d, p=args.p, epsilon=args.epsilon, delta=args.delta, seed=args.seed,
        entry_bound=args.entry_bound, n_bound=args.n_bound, alpha=args.alpha,
        lambda_scale=args.lambda_scale, use_crude_filter=not args.no_crude_filter,
        h_max=args.h_max, block_size=args.block_size, record_timings=args.timings)
    pipeline = EmbeddingPipeline(config)
    for row in rows:
        pipeline.stream_embed_update(row)
    logger.info(f"embed-stream: {rows.shape[0]} linhas processadas")

    E = pipeline.encoded_embedding()
    if args.out:
        write_bytes(args.out, serialize_rows(E))
    metrics = pipeline.metrics()
    metrics.update({
        'command': 'embed-stream',
        'seed': config.seed,
        'config': config.to_dict(),
        'input': loader.get_metadata(),
        'encoded_rows': len(E),
        'encoded_bytes': len(serialize_rows(E)),
    })
    _emit_metrics(metrics, args.metrics)
    return EXIT_OK


# ---------------------------------------------------------------- eval

def _artifact_kind(payload: bytes) -> str:
    magic = payload[:4]
    if magic == b"KZC1":
        return 'clustering'
    if magic == b"LPE1":
        return 'embedding'
    if magic == b"PIPE":
        return 'snapshot'
    raise InputDataError(f"artefato não reconhecido (magic {magic!r})")


def cmd_eval(args) -> int:
    """Compara o artefato com o conjunto original."""
    payload = _read_bytes(args.artifact)
    kind = _artifact_kind(payload)
    seed = args.seed
    if kind == 'embedding':
        E = deserialize_rows(payload)
        A = _load_input(args.data, False).to_matrix()
        if A.d != E.d:
            raise InputDataError(f"dimensão do artefato ({E.d}) difere da da matriz ({A.d})")
        result = evaluate_embedding(A, decode_rows(E), E.p, args.directions, seed)
    else:
        X = _load_input(args.data, args.weighted).to_dataset()
        if kind == 'snapshot':
            pipeline = ClusteringPipeline.from_snapshot(payload)
            S, k, z = pipeline.current_coreset(), pipeline.config.k, pipeline.config.z
        else:
            E = deserialize(payload)
            S, k, z = decode(E), args.k or max(E.k, 1), args.z
        if len(S) and len(X) and S.d != X.d:
            raise InputDataError(f"dimensão do artefato ({S.d}) difere da do conjunto ({X.d})")
        result = evaluate_clustering(X, S, args.k or k, z, args.queries, args.local_search_sets, seed)
    result.update({'command': 'eval', 'seed': seed, 'schema_version': METRICS_SCHEMA_VERSION})
    _emit_metrics(result, args.metrics)
    return EXIT_OK


# ---------------------------------------------------------------- oracle

def cmd_oracle(args) -> int:
    """Valores exatos dos oráculos para fixtures pequenas."""
    loader = _load_input(args.input, args.weighted)
    indices = args.index if args.index else None
    out: Dict[str, Any] = {'schema_version': METRICS_SCHEMA_VERSION, 'kind': args.kind,
                           'input': loader.get_metadata()['source_file']}
    if args.kind == 'lp':
        A = loader.values()
        rows = indices if indices is not None else list(range(A.shape[0]))
        values = []
        for t in rows:
            result = exact_lp_sensitivity(A, t, args.p, derive_rng(args.seed, "oracle-lp", t), args.directions)
            values.append({'index': t, 'value': result.value, 'exact': result.exact})
        out.update({'p': args.p, 'values': values})
    else:
        X = loader.to_dataset()
        out.update({'k': args.k, 'z': args.z})
        rows = indices if indices is not None else list(range(len(X)))
        if args.kind == 'opt':
            centers, cost = exact_medoids_opt(X, args.k, args.z, args.guard)
            out.update({'cost': cost, 'centers': centers.centers.tolist()})
        elif args.kind == 'medoids':
            out['values'] = [{'index': i, 'value': exact_medoids_sensitivity(X, i, args.k, args.z, args.guard)}
                             for i in rows]
        elif args.kind == 'grid':
            out['values'] = []
            for i in rows:
                grid = grid_clustering_sensitivity(X, i, args.k, args.z, args.resolution)
                out['values'].append({'index': i, 'value': grid.value, 'spacing': grid.spacing})
        else:
            out['values'] = [dict(index=i, **asdict(medoids_vs_clustering_gap(X, i, args.k, args.z, args.resolution)))
                             for i in rows]
    if args.out:
        write_metrics_json(args.out, out)
    else:
        sys.stdout.write(metrics_json(out))
    return EXIT_OK


# ---------------------------------------------------------------- solve

def cmd_solve(args) -> int:
    """Resolve (k, z)-medoids diretamente no arquivo."""
    X = _load_input(args.input, args.weighted).to_dataset()
    if len(X) == 0:
        raise InputDataError("conjunto vazio")
    rng = derive_rng(args.seed, "solve", args.method)
    if args.method == 'fast':
        centers = fast_kz_approx(X, args.k, args.z, rng)
    else:
        centers = local_search_medoids(X, args.k, args.z, rng)
    cost = clustering_cost(X, centers, args.z)
    if args.centers:
        write_centers_csv(args.centers, centers.centers)
    _emit_metrics({'command': 'solve', 'method': args.method, 'k': args.k, 'z': args.z, 'seed': args.seed,
                   'cost': cost, 'cost_estimate': centers.cost_estimate, 'n': len(X)}, args.metrics)
    return EXIT_OK


# ---------------------------------------------------------------- generate

def planted_mixture(n: int, d: int, k: int, grid_delta: int, spread: float, seed: int) -> np.ndarray:
    """Mistura gaussiana plantada (make_blobs) arredondada para a grade [1, Delta]^d."""
    points, _ = make_blobs(n_samples=n, n_features=d, centers=k, cluster_std=spread * grid_delta,
                           center_box=(0.1 * grid_delta, 0.9 * grid_delta), random_state=seed % 2**32)
    return np.clip(np.rint(points), 1, grid_delta)


def gaussian_integer_matrix(n: int, d: int, scale: float, entry_bound: float, seed: int) -> np.ndarray:
    rng = derive_rng(seed, "generate", "matrix")
    return np.clip(np.rint(rng.standard_normal((n, d)) * scale), -entry_bound, entry_bound)


def cmd_generate(args) -> int:
    """Gera fixtures: mistura plantada ou matriz inteira gaussiana."""
    if args.kind == 'blobs':
        data = planted_mixture(args.n, args.d, args.k, args.grid_delta, args.spread, args.seed)
    else:
        data = gaussian_integer_matrix(args.n, args.d, args.scale, args.entry_bound, args.seed)
    if args.out.lower().endswith('.bin'):
        write_sckz(args.out, data)
    else:
        write_points_csv(args.out, data)
    return EXIT_OK


# ---------------------------------------------------------------- bench

def _bench_space(n: int, args) -> Dict[str, Any]:
    points = planted_mixture(n, args.d, args.k, args.grid_delta, args.spread, args.seed)
    config = PipelineConfig(k=args.k, d=args.d, epsilon=args.epsilon, seed=args.seed,
                            grid_delta=args.grid_delta, n_bound=max(args.sizes))
    pipeline = ClusteringPipeline(config)
    for point in points:
        pipeline.stream_update(point)
    m = pipeline.metrics()
    return {'n': n, 'k': args.k, 'peak_encoded_bytes': m['peak_encoded_bytes'],
            'peak_overhead_bytes': m['peak_overhead_bytes'], 'coreset_size': m['coreset_size'],
            'sampled_stream': m['sampled_stream']}


def _bench_time(k: int, args) -> Dict[str, Any]:
    n = args.sizes[0]
    points = planted_mixture(n, args.d, max(args.ks), args.grid_delta, args.spread, args.seed)
    config = PipelineConfig(k=k, d=args.d, epsilon=args.epsilon, seed=args.seed,
                            grid_delta=args.grid_delta, n_bound=n, record_timings=True)
    pipeline = ClusteringPipeline(config)
    for point in points:
        pipeline.stream_update(point)
    timings = pipeline.metrics()['update_seconds']
    return {'n': n, 'k': k, 'mean_update_seconds': timings['mean'], 'coreset_size': len(pipeline.current_coreset())}


def _bench_embed(n: int, args) -> Dict[str, Any]:
    rows = gaussian_integer_matrix(n, args.d, 100.0, DEFAULT_ENTRY_BOUND, args.seed)
    pipeline = EmbeddingPipeline(EmbeddingConfig(d=args.d, p=args.p, epsilon=args.epsilon, seed=args.seed,
                                                 n_bound=max(args.sizes)))
    for row in rows:
        pipeline.stream_embed_update(row)
    m = pipeline.metrics()
    return {'n': n, 'retained_rows': m['retained_rows'], 'peak_encoded_bytes': m['peak_encoded_bytes']}


_BENCH_RUNNERS = {'space': _bench_space, 'time': _bench_time, 'embed': _bench_embed}


def _run_bench_point(job):
    kind, value, args = job
    return _BENCH_RUNNERS[kind](value, args)


def _variation(values: Sequence[float]) -> float:
    values = np.asarray(values, dtype=float)
    return float((values.max() - values.min()) / values.max()) if values.size and values.max() > 0 else 0.0


def cmd_bench(args) -> int:
    """Varreduras de escala: espaço em n, tempo em k e linhas retidas em n."""
    sweep = args.ks if args.kind == 'time' else args.sizes
    jobs = [(args.kind, value, args) for value in sweep]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_run_bench_point, jobs))
    else:
        rows = [_run_bench_point(job) for job in jobs]
    results = pd.DataFrame(rows)

    summary: Dict[str, Any] = {'command': 'bench', 'kind': args.kind, 'seed': args.seed, 'results': rows}
    if args.kind == 'space':
        summary['peak_bytes_variation'] = _variation(results['peak_encoded_bytes'])
        x, y = 'n', 'peak_encoded_bytes'
    elif args.kind == 'time':
        means = results['mean_update_seconds'].to_numpy()
        summary['time_ratio'] = float(means.max() / means.min()) if means.min() > 0 else float('inf')
        x, y = 'k', 'mean_update_seconds'
    else:
        summary['retained_rows_variation'] = _variation(results['retained_rows'])
        x, y = 'n', 'retained_rows'
    if args.csv:
        results.to_csv(args.csv, index=False)
    if args.plot:
        save_figure(bench_plot(results, x, y, title=f"bench {args.kind}"), args.plot)
    _emit_metrics(summary, args.metrics)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--seed', type=int, default=None, help="semente (padrão: STREAMKIT_SEED ou 0)")
    parent.add_argument('--metrics', help="arquivo JSON de métricas (padrão: stdout)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamkit", description="Coresets em streaming para (k,z)-clustering "
                                                                   "e subspace embeddings Lp")
    parser.add_argument('--verbose', action='store_true', help="logs em nível DEBUG")
    parser.add_argument('--quiet', action='store_true', help="apenas avisos e erros")
    parser.add_argument('--threads', type=int, default=1, help="processos paralelos (só no bench)")
    common = _common_parent()
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('cluster-stream', parents=[common], help="coreset de clustering em streaming")
    p.add_argument('--input', required=True)
    p.add_argument('--weighted', action='store_true', help="última coluna traz os pesos")
    p.add_argument('--k', type=int, default=DEFAULT_K)
    p.add_argument('--z', type=float, default=DEFAULT_Z)
    p.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON)
    p.add_argument('--delta', type=float, default=DEFAULT_DELTA)
    p.add_argument('--n-bound', type=int, default=DEFAULT_N_BOUND)
    p.add_argument('--grid-delta', type=int, default=DEFAULT_GRID_DELTA)
    p.add_argument('--iota', type=float, default=IOTA_DEFAULT)
    p.add_argument('--alpha', type=float, default=ALPHA_DEFAULT)
    p.add_argument('--lambda-scale', type=float, default=LAMBDA_SCALE_DEFAULT)
    p.add_argument('--batch-size', type=int, default=None)
    p.add_argument('--block-size', type=int, default=None)
    p.add_argument('--h-max', type=int, default=H_MAX_DEFAULT)
    p.add_argument('--jl', dest='jl', action='store_true', default=None)
    p.add_argument('--no-jl', dest='jl', action='store_false')
    p.add_argument('--no-rough-filter', action='store_true')
    p.add_argument('--dim', type=int, default=1, help="dimensão quando a entrada é vazia")
    p.add_argument('--state-in', help="retoma a partir de um snapshot")
    p.add_argument('--state-out', help="grava o snapshot do pipeline (PIPE)")
    p.add_argument('--timings', action='store_true', help="inclui tempos de relógio nas métricas")
    p.add_argument('--out', help="coreset codificado (KZC1)")
    p.add_argument('--centers', help="centros em CSV")
    p.set_defaults(func=cmd_cluster_stream)

    p = sub.add_parser('embed-stream', parents=[common], help="subspace embedding Lp em streaming")
    p.add_argument('--input', required=True)
    p.add_argument('--p', type=float, default=DEFAULT_P)
    p.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON)
    p.add_argument('--delta', type=float, default=DEFAULT_DELTA)
    p.add_argument('--entry-bound', type=float, default=DEFAULT_ENTRY_BOUND)
    p.add_argument('--n-bound', type=int, default=DEFAULT_N_BOUND)
    p.add_argument('--alpha', type=float, default=ALPHA_DEFAULT)
    p.add_argument('--lambda-scale', type=float, default=EMBED_LAMBDA_SCALE_DEFAULT)
    p.add_argument('--block-size', type=int, default=None)
    p.add_argument('--h-max', type=int, default=H_MAX_DEFAULT)
    p.add_argument('--no-crude-filter', action='store_true')
    p.add_argument('--timings', action='store_true', help="inclui tempos de relógio nas métricas")
    p.add_argument('--dim', type=int, default=1, help="dimensão quando a entrada é vazia")
    p.add_argument('--out', help="conjunto de linhas codificado (LPE1)")
    p.set_defaults(func=cmd_embed_stream)

    p = sub.add_parser('eval', parents=[common], help="erro do artefato contra o conjunto original")
    p.add_argument('--data', required=True)
    p.add_argument('--artifact', required=True)
    p.add_argument('--weighted', action='store_true')
    p.add_argument('--k', type=int, default=None, help="padrão: número de âncoras do artefato")
    p.add_argument('--z', type=float, default=DEFAULT_Z)
    p.add_argument('--queries', type=int, default=500)
    p.add_argument('--local-search-sets', type=int, default=20)
    p.add_argument('--directions', type=int, default=10_000)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser('oracle', parents=[common], help="valores exatos dos oráculos")
    p.add_argument('--input', required=True)
    p.add_argument('--weighted', action='store_true')
    p.add_argument('--kind', choices=['medoids', 'grid', 'gap', 'opt', 'lp'], default='medoids')
    p.add_argument('--k', type=int, default=1)
    p.add_argument('--z', type=float, default=DEFAULT_Z)
    p.add_argument('--p', type=float, default=DEFAULT_P)
    p.add_argument('--index', type=int, action='append', help="índice consultado (repetível; padrão: todos)")
    p.add_argument('--guard', type=int, default=MEDOID_SUBSET_GUARD)
    p.add_argument('--resolution', type=int, default=GRID_RESOLUTION_DEFAULT)
    p.add_argument('--directions', type=int, default=LP_ORACLE_DIRECTIONS)
    p.add_argument('--out')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('solve', parents=[common], help="(k,z)-medoids direto no arquivo")
    p.add_argument('--input', required=True)
    p.add_argument('--weighted', action='store_true')
    p.add_argument('--k', type=int, default=DEFAULT_K)
    p.add_argument('--z', type=float, default=DEFAULT_Z)
    p.add_argument('--method', choices=['local-search', 'fast'], default='local-search')
    p.add_argument('--centers')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('generate', parents=[common], help="gera fixtures (CSV ou SCKZ .bin)")
    p.add_argument('--kind', choices=['blobs', 'matrix'], default='blobs')
    p.add_argument('--n', type=int, default=10_000)
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--k', type=int, default=DEFAULT_K)
    p.add_argument('--grid-delta', type=int, default=DEFAULT_GRID_DELTA)
    p.add_argument('--spread', type=float, default=0.02, help="desvio dos grupos como fração de Delta")
    p.add_argument('--scale', type=float, default=100.0, help="desvio das entradas da matriz")
    p.add_argument('--entry-bound', type=float, default=DEFAULT_ENTRY_BOUND)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('bench', parents=[common], help="varreduras de escala")
    p.add_argument('--kind', choices=['space', 'time', 'embed'], default='space')
    p.add_argument('--sizes', type=int, nargs='+', default=[10_000, 20_000, 40_000, 80_000])
    p.add_argument('--ks', type=int, nargs='+', default=[10, 100])
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--k', type=int, default=DEFAULT_K)
    p.add_argument('--p', type=float, default=DEFAULT_P)
    p.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON)
    p.add_argument('--grid-delta', type=int, default=DEFAULT_GRID_DELTA)
    p.add_argument('--spread', type=float, default=0.02)
    p.add_argument('--csv', help="tabela de resultados")
    p.add_argument('--plot', help="gráfico PNG")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ponto de entrada da CLI.

    Returns:
        Código de saída (0, 2 ou 3)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose, args.quiet)
    if args.threads < 1:
        logger.error("--threads deve ser >= 1")
        return EXIT_USAGE
    args.seed = resolve_seed(args.seed)
    logger.info(f"Comando {args.command} iniciado (semente {args.seed})")
    try:
        code = args.func(args)
    except UsageError as e:
        logger.error(f"Uso inválido: {e}")
        return EXIT_USAGE
    except DegenerateInstanceError as e:
        logger.error(f"Instância degenerada: {e}")
        return EXIT_DATA
    except ContractError as e:
        logger.error(f"Parâmetros inválidos: {e}")
        return EXIT_USAGE
    except ResourceGuardError as e:
        logger.error(f"Erro de recurso: {e}")
        return EXIT_DATA
    except (InputDataError, FileNotFoundError) as e:
        logger.error(f"Erro nos dados de entrada: {e}")
        return EXIT_DATA
    logger.info(f"Comando {args.command} concluído")
    return code


if __name__ == "__main__":
    sys.exit(main())
