"""
Pipeline de subspace embedding Lp em streaming.

Filtro grosseiro pelo esboço gaussiano da âncora de fator constante, refino
pela amostragem online de Lewis e merge-and-reduce sobre conjuntos de linhas
codificados contra âncora e precondicionador globais.
"""
import logging
import math
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from .crude_sketch import CrudeLeverageSketch, crude_lp_sensitivity
from .lewis import RealMatrix
from .row_codec import EncodedRowSet, RowCodec, anchor_target_size, row_target_size
from .sampler import LewisRowEstimator, OnlineLewisSampler
from ..config import (
    ALPHA_DEFAULT,
    CONSTANT_EPSILON,
    CRUDE_SKETCH_TRIALS,
    DEFAULT_DELTA,
    DEFAULT_ENTRY_BOUND,
    DEFAULT_EPSILON,
    DEFAULT_N_BOUND,
    DEFAULT_P,
    DEFAULT_SEED,
    EMBED_LAMBDA_SCALE_DEFAULT,
    EPS_PRIME_CONSTANT,
    H_MAX_DEFAULT,
    METRICS_SCHEMA_VERSION,
    ROW_SAMPLE_CONSTANT,
)
from ..errors import ContractError, InputDataError
from ..merge_reduce.state import MergeReduceState
from ..utils.rng import derive_rng
from ..utils.streaming_stats import StreamingStat

logger = logging.getLogger(__name__)

_SUMMARY_MAX_HEIGHT = 64


@dataclass
class EmbeddingConfig:
    """Parâmetros do pipeline de linhas."""

    d: int
    p: float = DEFAULT_P
    epsilon: float = DEFAULT_EPSILON
    delta: float = DEFAULT_DELTA
    seed: int = DEFAULT_SEED
    entry_bound: float = DEFAULT_ENTRY_BOUND
    n_bound: int = DEFAULT_N_BOUND
    alpha: float = ALPHA_DEFAULT
    lambda_scale: float = EMBED_LAMBDA_SCALE_DEFAULT
    use_crude_filter: bool = True
    h_max: int = H_MAX_DEFAULT
    eps_prime_constant: float = EPS_PRIME_CONSTANT
    row_constant: float = ROW_SAMPLE_CONSTANT
    block_size: Optional[int] = None
    sketch_trials: int = CRUDE_SKETCH_TRIALS
    record_timings: bool = False

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ContractError(f"d deve ser inteiro >= 1: {self.d}")
        self.d = int(self.d)
        if self.p < 1:
            raise ContractError(f"p deve ser >= 1: {self.p}")
        if not 0 < self.epsilon < 1:
            raise ContractError(f"epsilon deve estar em (0,1): {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ContractError(f"delta deve estar em (0,1): {self.delta}")
        if self.entry_bound < 1 or self.n_bound < 1 or self.h_max < 1 or self.sketch_trials < 1:
            raise ContractError("limites devem ser positivos")
        if not 0 < self.alpha < 1 or self.lambda_scale <= 0:
            raise ContractError(f"alpha/lambda inválidos: {self.alpha}, {self.lambda_scale}")
        self.seed = int(self.seed) & 0xFFFFFFFFFFFFFFFF

    @property
    def level_epsilon(self) -> float:
        return self.epsilon / (4.0 * self.h_max)

    @property
    def level_fail_prob(self) -> float:
        return self.delta * self.epsilon / max(math.log2(self.n_bound * self.entry_bound), 1.0)

    def eps_prime_for(self, epsilon: float) -> float:
        """eps' = eps^max(p,2) / (c d (d + log2(n M)))."""
        return epsilon ** max(self.p, 2.0) / (
            self.eps_prime_constant * self.d * (self.d + math.log2(max(self.n_bound * self.entry_bound, 2.0))))

    @property
    def eps_prime(self) -> float:
        return self.eps_prime_for(self.epsilon)

    @property
    def lam(self) -> float:
        """lambda = escala * log(d / delta) / eps^2."""
        return self.lambda_scale * math.log(max(self.d, 2) / self.delta) / self.epsilon ** 2

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class EmbeddingPipeline:
    """
    Máquina de estados de escritor único para o embedding de linhas.
    """

    def __init__(self, config: EmbeddingConfig):
        self.config = config
        d, p = config.d, config.p
        target = config.block_size or row_target_size(d, p, config.level_epsilon, config.level_fail_prob,
                                                      config.row_constant)
        main_codec = RowCodec(d, p, config.level_epsilon, config.level_fail_prob, config.eps_prime,
                              config.entry_bound, target, name="rows-main")
        summary_codec = RowCodec(d, p, CONSTANT_EPSILON, config.level_fail_prob,
                                 config.eps_prime_for(CONSTANT_EPSILON), config.entry_bound,
                                 anchor_target_size(d), name="rows-summary")
        self.main = MergeReduceState(main_codec, main_codec.target, config.seed, config.h_max)
        self.summary = MergeReduceState(summary_codec, 2 * summary_codec.target, config.seed, _SUMMARY_MAX_HEIGHT)
        self.refined = OnlineLewisSampler(LewisRowEstimator(p), config.lam)
        self.sketch: Optional[CrudeLeverageSketch] = None
        self.sketch_generation = 0
        self._sketch_rows = 0
        self._history: Optional[RealMatrix] = None
        self._history_key = -1
        self.seen = 0
        self.n_bound = int(config.n_bound)
        self.stats = {'offered': 0, 'crude_kept': 0, 'refined_kept': 0}
        self.timings = StreamingStat() if config.record_timings else None
        logger.info(f"Pipeline de embedding: d={d}, p={p}, eps={config.epsilon}, bloco={self.main.block_size}")

    def _summary_rows(self) -> RealMatrix:
        if self._history_key != self.summary.inserted:
            self._history = self.summary.query()
            self._history_key = self.summary.inserted
        return self._history

    def _refresh_sketch(self) -> None:
        """Reconstrói o esboço quando o resumo dobrou desde a última geração."""
        size = self.summary.inserted
        if size == 0 or (self.sketch is not None and size < 2 * self._sketch_rows):
            return
        rng = derive_rng(self.config.seed, "crude-sketch", self.sketch_generation)
        self.sketch = CrudeLeverageSketch.from_anchor(self._summary_rows(), rng, self.config.sketch_trials)
        self.sketch_generation += 1
        self._sketch_rows = size
        logger.debug(f"Esboço grosseiro na geração {self.sketch_generation} ({size} linhas no resumo)")

    def stream_embed_update(self, a) -> "EmbeddingPipeline":
        """
        Processa uma linha inteira do stream.

        Raises:
            InputDataError: Entrada acima de M, não inteira ou dimensão errada
        """
        started = time.perf_counter() if self.timings is not None else 0.0
        row = RealMatrix.from_rows(a, self.config.entry_bound)
        if row.d != self.config.d or len(row) != 1:
            raise InputDataError(f"linha com {row.rows.size} entradas; esperado {self.config.d}")
        vector = row.rows[0]
        self.seen += 1
        self.stats['offered'] += 1
        if self.seen > self.n_bound:
            self.n_bound *= 2
            logger.info(f"Limite de n ultrapassado; dobrado para {self.n_bound}")

        scale = 1.0
        if self.config.use_crude_filter and self.sketch is not None:
            crude = crude_lp_sensitivity(self.sketch, vector, self.config.p, self.n_bound)
            inflation = float(self.n_bound) ** (2 * self.config.alpha) * self.config.d
            prob = min(1.0, self.refined.lam * inflation * crude)
            draw = derive_rng(self.config.seed, "crude-draw", self.seen).random()
            if prob <= 0.0 or draw >= prob:
                self._finish(started)
                return self
            scale = (1.0 / prob) ** (1.0 / self.config.p)
        self.stats['crude_kept'] += 1

        draw = derive_rng(self.config.seed, "lewis-draw", self.seen).random()
        new_scale = self.refined.offer(self._summary_rows(), vector, draw, scale)
        if new_scale is not None:
            self.stats['refined_kept'] += 1
            kept = RealMatrix(vector.reshape(1, -1), [new_scale])
            self.main.insert(kept)
            self.summary.insert(kept)
            self._refresh_sketch()
        self._finish(started)
        return self

    def _finish(self, started: float) -> None:
        if self.timings is not None:
            self.timings.add(time.perf_counter() - started)

    def current_embedding(self) -> RealMatrix:
        """Linhas mantidas (decodificadas) com suas escalas."""
        return self.main.query()

    def encoded_embedding(self) -> EncodedRowSet:
        """Embedding atual codificado contra âncora e precondicionador recalculados."""
        rows = self.current_embedding()
        rng = derive_rng(self.config.seed, "final-anchors", self.seen)
        return self.main.codec.encode(rows, self.main.codec.compute_anchors(rows, rng))

    def metrics(self) -> Dict[str, Any]:
        anchors = self.main.anchors
        out = {
            'schema_version': METRICS_SCHEMA_VERSION,
            'n': self.seen,
            'intermediate_stream': self.stats['crude_kept'],
            'sampled_stream': self.stats['refined_kept'],
            'retained_rows': len(self.current_embedding()),
            'reduce_events': self.main.reduce_count,
            'tree_height': self.main.height,
            'anchor_generation': self.main.generation,
            'sketch_generation': self.sketch_generation,
            'block_size': self.main.block_size,
            'peak_encoded_bytes': self.main.peak_record_bytes,
            'peak_overhead_bytes': self.main.peak_overhead_bytes,
            'n_bound': self.n_bound,
            'eps_prime': self.config.eps_prime,
            'lambda': self.refined.lam,
        }
        if anchors is not None and anchors.report is not None:
            out['conditioning_exponent'] = anchors.report.exponent
            out['anchor_rank'] = anchors.report.rank
        if self.timings is not None:
            out['update_seconds'] = self.timings.summary()
        return out


def stream_embed_update(pipeline: EmbeddingPipeline, a) -> EmbeddingPipeline:
    return pipeline.stream_embed_update(a)
