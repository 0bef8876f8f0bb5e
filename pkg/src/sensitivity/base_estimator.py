"""
Classe base para os estimadores de sensibilidade.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from ..errors import ContractError
from ..geometry.types import Dataset

# Menor valor positivo devolvido quando a razão bruta é zero
_FLOOR = np.finfo(float).tiny


class Quality(str, Enum):
    EXACT = "exact"
    CONSTANT_FACTOR = "constant-factor"
    CRUDE = "crude"


@dataclass(frozen=True)
class SensitivityEstimate:
    """
    Estimativa de sensibilidade de uma consulta.

    value fica em (0, 1] após o corte; raw guarda o valor antes do corte.
    """

    value: float
    quality: Quality
    claimed_factor: float = 1.0
    raw: float = 0.0

    def __post_init__(self):
        if not 0 < self.value <= 1:
            raise ContractError(f"sensibilidade fora de (0,1]: {self.value}")
        if self.claimed_factor < 1:
            raise ContractError(f"fator declarado deve ser >= 1: {self.claimed_factor}")


def make_estimate(raw: float, quality: Quality, claimed_factor: float = 1.0) -> SensitivityEstimate:
    """Corta o valor bruto para (0, 1]."""
    value = float(min(1.0, max(float(raw), _FLOOR)))
    return SensitivityEstimate(value, quality, float(claimed_factor), float(raw))


def estimate_values(estimates: List[SensitivityEstimate]) -> np.ndarray:
    return np.array([e.value for e in estimates], dtype=float)


def coincident_share(U: Dataset, batch_start: int) -> np.ndarray:
    """
    Sensibilidade exata quando o suporte tem no máximo k pontos.

    Cada consulta recebe seu peso dividido pelo peso total das entradas no mesmo local.
    """
    _, mass, labels = U.support()
    batch_labels = labels[batch_start:]
    return U.weights[batch_start:] / mass[batch_labels]


class BaseSensitivityEstimator(ABC):
    """
    Classe abstrata base para estimadores de sensibilidade em lote.

    Implementa o padrão Strategy: o amostrador online e o filtro em dois
    estágios aceitam qualquer estimador.
    """

    quality: Quality = Quality.CONSTANT_FACTOR

    def __init__(self, k: int, z: float):
        if k < 1 or z < 1:
            raise ContractError(f"parâmetros inválidos: k={k}, z={z}")
        self.k = int(k)
        self.z = float(z)

    @abstractmethod
    def estimate(self, summary: Dataset, batch: Dataset) -> List[SensitivityEstimate]:
        """
        Estima a sensibilidade de cada ponto do lote em relação a summary ∪ batch.

        Args:
            summary: Resumo (coreset) do histórico
            batch: Pontos consultados

        Returns:
            Uma estimativa por ponto do lote, na mesma ordem
        """
        pass

    def values(self, summary: Dataset, batch: Dataset) -> np.ndarray:
        return estimate_values(self.estimate(summary, batch))
