"""
Amostragem online de linhas por pesos de Lewis: a_t entra com probabilidade
p_t = min(1, lambda * sigma(a_t)) e escala (1/p_t)^(1/p).
"""
import logging
from abc import ABC, abstractmethod
from typing import Iterable, Iterator, Optional, Tuple

import numpy as np

from .crude_sketch import CrudeLeverageSketch, crude_lp_sensitivity, lp_sensitivity_upper_bound
from .lewis import RealMatrix, leverage_scores, lewis_weights
from ..errors import ContractError

logger = logging.getLogger(__name__)


class BaseRowEstimator(ABC):
    """
    Classe abstrata base para estimadores de sensibilidade de linhas.
    """

    def __init__(self, p: float):
        if p < 1:
            raise ContractError(f"p deve ser >= 1: {p}")
        self.p = float(p)

    @abstractmethod
    def estimate(self, history: RealMatrix, row: np.ndarray) -> float:
        """
        Sensibilidade de `row` em relação a history ∪ {row}, em [0, 1].
        """
        pass


class LewisRowEstimator(BaseRowEstimator):
    """Peso de Lewis da linha nova contra o histórico (caminho de fator constante)."""

    def estimate(self, history: RealMatrix, row: np.ndarray) -> float:
        row = np.asarray(row, dtype=float).reshape(1, -1)
        if not np.any(row):
            return 0.0
        stacked = np.vstack([history.scaled(), row]) if len(history) else row
        if self.p == 2:
            return float(min(1.0, leverage_scores(stacked)[-1]))
        state = lewis_weights(stacked, self.p)
        if state.converged:
            return float(min(1.0, state.weights[-1]))
        xi = float(np.sqrt(leverage_scores(stacked)[-1]))
        return lp_sensitivity_upper_bound(xi, self.p, stacked.shape[0], stacked.shape[1])


class CrudeRowEstimator(BaseRowEstimator):
    """Sensibilidade grosseira pelo esboço gaussiano da âncora."""

    def __init__(self, p: float, sketch: CrudeLeverageSketch, n_bound: int):
        super().__init__(p)
        self.sketch = sketch
        self.n_bound = int(n_bound)

    def estimate(self, history: RealMatrix, row: np.ndarray) -> float:
        return crude_lp_sensitivity(self.sketch, row, self.p, self.n_bound)


class OnlineLewisSampler:
    """
    Decide linha a linha o que segue adiante, com estatísticas.
    """

    def __init__(self, estimator: BaseRowEstimator, lam: float):
        if lam <= 0:
            raise ContractError(f"lambda deve ser positivo: {lam}")
        self.estimator = estimator
        self.lam = float(lam)
        self.stats = {'offered': 0, 'kept': 0, 'forced': 0}

    def probability(self, history: RealMatrix, row: np.ndarray) -> float:
        return float(min(1.0, self.lam * self.estimator.estimate(history, row)))

    def offer(self, history: RealMatrix, row: np.ndarray, draw: float, scale: float = 1.0) -> Optional[float]:
        """
        Oferece uma linha (já com escala `scale`).

        Args:
            history: Linhas mantidas até agora
            row: Linha sem escala
            draw: Uniforme em [0, 1) sorteado pelo chamador
            scale: Escala acumulada nos estágios anteriores

        Returns:
            Nova escala se a linha foi mantida, senão None
        """
        self.stats['offered'] += 1
        prob = self.probability(history, np.asarray(row, dtype=float) * scale)
        if prob >= 1.0:
            self.stats['forced'] += 1
        if prob <= 0.0 or draw >= prob:
            return None
        self.stats['kept'] += 1
        return scale * (1.0 / prob) ** (1.0 / self.estimator.p)


def online_lewis_sampler(rows: Iterable, estimator: BaseRowEstimator, lam: float,
                         rng: np.random.Generator, d: Optional[int] = None) -> Iterator[Tuple[np.ndarray, float]]:
    """
    Amostra um stream de linhas usando como histórico as próprias linhas mantidas.

    Args:
        rows: Linhas em ordem de chegada
        estimator: Estimador de sensibilidade
        lam: Fator lambda
        rng: Gerador do subfluxo
        d: Dimensão (inferida da primeira linha se omitida)

    Yields:
        Tuplas (linha, escala)
    """
    sampler = OnlineLewisSampler(estimator, lam)
    history: Optional[RealMatrix] = None
    for row in rows:
        row = np.asarray(row, dtype=float).reshape(-1)
        if history is None:
            history = RealMatrix.empty(d or row.shape[0])
        scale = sampler.offer(history, row, float(rng.random()))
        if scale is None:
            continue
        history = history.union(RealMatrix(row.reshape(1, -1), [scale]))
        yield row, scale
    logger.debug(f"Amostrador de Lewis: {sampler.stats}")
