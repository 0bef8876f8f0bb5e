"""
Amostragem online por sensibilidade: x_t entra com probabilidade
p_t = min(1, lambda * sigma(x_t)) e peso w / p_t.
"""
import logging
import math
from typing import Iterable, Iterator, List, Optional

import numpy as np

from .base_estimator import BaseSensitivityEstimator, estimate_values
from ..config import LAMBDA_SCALE_DEFAULT
from ..errors import ContractError
from ..geometry.types import Dataset, WeightedPoint

logger = logging.getLogger(__name__)


def default_lambda(d: int, k: int, epsilon: float, n_bound: int, delta_grid: float,
                   scale: float = LAMBDA_SCALE_DEFAULT) -> float:
    """lambda = scale * (d k / eps^2) * log(n Delta / eps)."""
    return scale * (d * k / epsilon ** 2) * math.log(max(n_bound * delta_grid / epsilon, math.e))


class OnlineSensitivitySampler:
    """
    Amostrador que decide, lote a lote, quais pontos seguem adiante.
    """

    def __init__(self, estimator: BaseSensitivityEstimator, lam: float, rng: np.random.Generator):
        if lam <= 0:
            raise ContractError(f"lambda deve ser positivo: {lam}")
        self.estimator = estimator
        self.lam = float(lam)
        self.rng = rng
        self.stats = {'offered': 0, 'kept': 0, 'forced': 0}

    def probabilities(self, summary: Dataset, batch: Dataset) -> np.ndarray:
        values = self.estimator.values(summary, batch)
        return np.minimum(1.0, self.lam * values)

    def sample(self, summary: Dataset, batch: Dataset) -> Dataset:
        """
        Amostra o lote contra o resumo atual.

        Returns:
            Pontos mantidos, com peso original dividido pela probabilidade
        """
        if len(batch) == 0:
            return batch
        probs = self.probabilities(summary, batch)
        draws = self.rng.random(len(batch))
        keep = draws < probs
        self.stats['offered'] += len(batch)
        self.stats['kept'] += int(keep.sum())
        self.stats['forced'] += int(np.count_nonzero(probs >= 1.0))
        return Dataset(batch.points[keep], batch.weights[keep] / probs[keep], batch.delta)


def online_sens_sampler(stream: Iterable[WeightedPoint], estimator: BaseSensitivityEstimator,
                        lam: float, rng: np.random.Generator, batch_size: Optional[int] = None,
                        d: Optional[int] = None) -> Iterator[WeightedPoint]:
    """
    Amostra um stream de pontos, usando como resumo os próprios pontos já amostrados.

    Args:
        stream: Pontos ponderados em ordem de chegada
        estimator: Estimador de sensibilidade
        lam: Fator lambda
        rng: Gerador do subfluxo
        batch_size: Tamanho dos lotes (padrão k do estimador)
        d: Dimensão (inferida do primeiro ponto se omitida)

    Yields:
        Pontos amostrados com peso reescalado
    """
    sampler = OnlineSensitivitySampler(estimator, lam, rng)
    size = batch_size or estimator.k
    pending: List[WeightedPoint] = []
    history: Optional[Dataset] = None

    def flush() -> Iterator[WeightedPoint]:
        nonlocal history
        batch = Dataset.from_weighted_points(pending, d or pending[0].point.shape[0])
        summary = history if history is not None else Dataset.empty(batch.d)
        kept = sampler.sample(summary, batch)
        history = summary.union(kept)
        pending.clear()
        yield from kept

    for item in stream:
        pending.append(item)
        if len(pending) >= size:
            yield from flush()
    if pending:
        yield from flush()
    logger.debug(f"Amostrador online: {sampler.stats}")
