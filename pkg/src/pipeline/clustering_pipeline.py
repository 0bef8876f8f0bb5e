"""
Pipeline de (k, z)-clustering em streaming.

Cada ponto entra num lote de k; lotes completos passam pelo filtro em dois
estágios e os sobreviventes alimentam duas árvores merge-and-reduce: a principal
(precisão eps, coordenadas originais) e a de fator constante (eps = 1/2, espaço
da projeção JL), cuja consulta é o resumo usado pelos estimadores.
"""
import json
import logging
import struct
import time
from typing import Any, Dict, Optional, Union

import numpy as np

from .jl import JLProjection
from .settings import PipelineConfig
from .two_stage_filter import TwoStageFilter
from ..config import CONSTANT_EPSILON, METRICS_SCHEMA_VERSION
from ..errors import ContractError, FormatError, InputDataError
from ..geometry.types import CenterSet, ClusteringParams, Dataset, validate_grid_point
from ..merge_reduce.clustering_codec import ClusteringCodec, reduce_target_size
from ..merge_reduce.state import MergeReduceState
from ..solvers.local_search import local_search_medoids
from ..utils.rng import derive_rng
from ..utils.streaming_stats import StreamingStat

logger = logging.getLogger(__name__)

MAGIC = b"PIPE"
VERSION = 1
_HEADER = struct.Struct("<4sI")
_LENGTH = struct.Struct("<Q")
# Árvore de fator constante: altura sem limite prático
_SUMMARY_MAX_HEIGHT = 64


class ClusteringPipeline:
    """
    Máquina de estados de escritor único para clustering em streaming.
    """

    def __init__(self, config: PipelineConfig):
        self.config = config
        jl_dim = config.jl_dimension if config.jl_enabled else config.d
        self.projection = JLProjection(config.d, jl_dim, derive_rng(config.seed, "jl"))
        sketch_dim = self.projection.out_dim

        main_codec = ClusteringCodec(
            config.d, config.k, config.z, config.level_epsilon, config.level_fail_prob,
            config.eps_prime, config.n_bound, config.grid_delta,
            target=config.block_size or reduce_target_size(config.k, config.d, config.level_epsilon,
                                                           config.level_fail_prob, config.reduce_constant),
            name="main")
        summary_codec = ClusteringCodec(
            sketch_dim, config.k, config.z, CONSTANT_EPSILON, config.level_fail_prob,
            config.constant_eps_prime, config.n_bound,
            None if not self.projection.is_identity else config.grid_delta, name="summary")
        self.main = MergeReduceState(main_codec, main_codec.target, config.seed, config.h_max)
        self.summary = MergeReduceState(summary_codec, config.constant_block_size, config.seed,
                                        _SUMMARY_MAX_HEIGHT)
        self.filter = TwoStageFilter(config, sketch_dim)

        self.batch = Dataset.empty(config.d, config.grid_delta)
        self.seen = 0
        self.n_bound = int(config.n_bound)
        self.n_bound_doublings = 0
        self.timings = StreamingStat() if config.record_timings else None
        self._centers: Optional[CenterSet] = None
        self._centers_key = None
        logger.info(f"Pipeline de clustering: k={config.k}, z={config.z}, eps={config.epsilon}, "
                    f"bloco={self.main.block_size}, JL {config.d}->{sketch_dim}")

    def stream_update(self, x, weight: float = 1.0) -> "ClusteringPipeline":
        """
        Processa um ponto do stream.

        Args:
            x: Coordenadas inteiras em [1, Delta]^d
            weight: Peso positivo

        Returns:
            O próprio pipeline

        Raises:
            InputDataError: Coordenadas fora da grade ou dimensão errada
        """
        started = time.perf_counter() if self.timings is not None else 0.0
        point = validate_grid_point(x, self.config.grid_delta)
        if point.shape[0] != self.config.d:
            raise InputDataError(f"ponto com {point.shape[0]} coordenadas; esperado {self.config.d}")
        if not weight > 0:
            raise ContractError(f"peso deve ser positivo: {weight}")
        self.seen += 1
        if self.seen > self.n_bound:
            self.n_bound *= 2
            self.n_bound_doublings += 1
            logger.info(f"Limite de n ultrapassado; dobrado para {self.n_bound}")
        self.batch = self.batch.union(Dataset(point.reshape(1, -1), [weight], self.config.grid_delta))
        if len(self.batch) >= self.config.effective_batch_size:
            self._process_batch()
        if self.timings is not None:
            self.timings.add(time.perf_counter() - started)
        return self

    def _process_batch(self) -> None:
        batch = self.batch
        self.batch = Dataset.empty(self.config.d, self.config.grid_delta)
        batch_sketch = Dataset(self.projection.project(batch.points), batch.weights)
        summary = self.summary.query()
        kept, kept_sketch = self.filter.process(summary, batch, batch_sketch, self.n_bound)
        if len(kept):
            self.main.insert(kept)
            self.summary.insert(kept_sketch)
        logger.debug(f"Lote processado: {len(batch)} pontos, {len(kept)} seguem; "
                     f"resumo com {len(summary)} pontos")

    def current_coreset(self) -> Dataset:
        """Coreset do prefixo: árvore principal, sobreviventes pendentes e lote em curso."""
        return self.main.query().union(self.filter.pending, self.batch)

    def current_centers(self) -> CenterSet:
        """
        Centros O(z)-aproximados do prefixo.

        Recalculados por busca local no coreset atual a cada redução da árvore
        principal; antes da primeira redução, a cada mudança do prefixo.
        """
        key = ("reduce", self.main.reduce_count) if self.main.reduce_count else ("prefix", self.seen)
        if self._centers is None or key != self._centers_key:
            X = self.current_coreset()
            if len(X) == 0:
                self._centers = CenterSet(np.zeros((0, self.config.d)), cost_estimate=0.0)
            else:
                rng = derive_rng(self.config.seed, "centers", *key[1:], 0 if key[0] == "reduce" else 1)
                self._centers = local_search_medoids(X, self.config.k, self.config.z, rng)
            self._centers_key = key
        return self._centers

    def metrics(self) -> Dict[str, Any]:
        """Métricas do pipeline (sem tempos de relógio, a menos que habilitados)."""
        stats = self.filter.get_stats()
        out = {
            'schema_version': METRICS_SCHEMA_VERSION,
            'n': self.seen,
            'intermediate_stream': stats['rough_kept'],
            'sampled_stream': stats['refined_kept'],
            'filter': stats,
            'reduce_events': self.main.reduce_count,
            'tree_height': self.main.height,
            'anchor_generation': self.main.generation,
            'block_size': self.main.block_size,
            'peak_encoded_bytes': self.main.peak_record_bytes,
            'peak_overhead_bytes': self.main.peak_overhead_bytes,
            'summary_peak_encoded_bytes': self.summary.peak_record_bytes,
            'coreset_size': len(self.current_coreset()),
            'n_bound': self.n_bound,
            'n_bound_doublings': self.n_bound_doublings,
            'jl_dimension': self.projection.out_dim,
            'eps_prime': self.config.eps_prime,
            'lambda': self.filter.lam,
        }
        if self.timings is not None:
            out['update_seconds'] = self.timings.summary()
        return out

    def snapshot(self) -> bytes:
        """
        Formato PIPE: magic, u32 versão, JSON (configuração e contadores),
        estados MRST principal e de fator constante, lote em curso e sobreviventes pendentes.
        """
        echo = {
            'config': self.config.to_dict(),
            'counters': {
                'seen': self.seen,
                'n_bound': self.n_bound,
                'n_bound_doublings': self.n_bound_doublings,
                'rough_steps': self.filter.rough_steps,
                'refine_steps': self.filter.refine_steps,
                'stats': self.filter.stats,
            },
        }
        text = json.dumps(echo, sort_keys=True).encode("utf-8")
        parts = [_HEADER.pack(MAGIC, VERSION), _LENGTH.pack(len(text)), text,
                 self.main.to_bytes(), self.summary.to_bytes()]
        for codec, data in [(self.main.codec, self.batch), (self.main.codec, self.filter.pending),
                            (self.summary.codec, self.filter.pending_sketch)]:
            payload = codec.serialize_buffer(data)
            parts.append(_LENGTH.pack(len(payload)) + payload)
        return b"".join(parts)

    @classmethod
    def from_snapshot(cls, payload: bytes) -> "ClusteringPipeline":
        """
        Restaura um pipeline a partir de um snapshot PIPE.

        Raises:
            FormatError: magic, versão ou conteúdo inválidos
        """
        if len(payload) < _HEADER.size + _LENGTH.size:
            raise FormatError("snapshot PIPE truncado")
        magic, version = _HEADER.unpack_from(payload, 0)
        if magic != MAGIC:
            raise FormatError(f"magic inválido: {magic!r}")
        if version != VERSION:
            raise FormatError(f"versão PIPE não suportada: {version}")
        offset = _HEADER.size
        (length,) = _LENGTH.unpack_from(payload, offset)
        offset += _LENGTH.size
        try:
            echo = json.loads(payload[offset:offset + length].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise FormatError(f"configuração do snapshot ilegível: {e}")
        offset += length

        pipeline = cls(PipelineConfig.from_dict(echo['config']))
        pipeline.main, offset = MergeReduceState.read(payload, offset, pipeline.main.codec,
                                                      pipeline.config.seed, pipeline.config.h_max)
        pipeline.summary, offset = MergeReduceState.read(payload, offset, pipeline.summary.codec,
                                                         pipeline.config.seed, _SUMMARY_MAX_HEIGHT)
        buffers = []
        for codec in [pipeline.main.codec, pipeline.main.codec, pipeline.summary.codec]:
            if len(payload) < offset + _LENGTH.size:
                raise FormatError("snapshot PIPE truncado")
            (length,) = _LENGTH.unpack_from(payload, offset)
            offset += _LENGTH.size
            buffers.append(codec.deserialize_buffer(payload[offset:offset + length]))
            offset += length
        if offset != len(payload):
            raise FormatError("bytes sobrando no snapshot PIPE")
        pipeline.batch, pipeline.filter.pending, pipeline.filter.pending_sketch = buffers

        counters = echo['counters']
        pipeline.seen = int(counters['seen'])
        pipeline.n_bound = int(counters['n_bound'])
        pipeline.n_bound_doublings = int(counters['n_bound_doublings'])
        pipeline.filter.rough_steps = int(counters['rough_steps'])
        pipeline.filter.refine_steps = int(counters['refine_steps'])
        pipeline.filter.stats = {key: int(value) for key, value in counters['stats'].items()}
        return pipeline


def stream_update(pipeline: ClusteringPipeline, x, weight: float = 1.0) -> ClusteringPipeline:
    return pipeline.stream_update(x, weight)


def config_for_dataset(X: Dataset, params: ClusteringParams, **overrides) -> PipelineConfig:
    """Configuração padrão para processar X inteiro."""
    grid = X.delta or (int(np.max(X.points)) if len(X) else 1)
    options = dict(k=params.k, d=X.d, z=params.z, epsilon=params.epsilon, delta=params.delta,
                   seed=params.seed, grid_delta=max(int(grid), 1), n_bound=max(len(X), 2))
    options.update(overrides)
    return PipelineConfig(**options)


def offline_cluster(X: Dataset, params: Union[ClusteringParams, PipelineConfig]) -> CenterSet:
    """
    Modo offline: passa X pelo pipeline na ordem dada e devolve os centros finais.

    Args:
        X: Conjunto ponderado com coordenadas na grade
        params: Parâmetros do problema ou configuração completa

    Returns:
        CenterSet
    """
    config = params if isinstance(params, PipelineConfig) else config_for_dataset(X, params)
    if len(X) and X.d != config.d:
        raise ContractError(f"dimensões diferentes: dados {X.d}, configuração {config.d}")
    pipeline = ClusteringPipeline(config)
    for point, weight in zip(X.points, X.weights):
        pipeline.stream_update(point, float(weight))
    return pipeline.current_centers()
