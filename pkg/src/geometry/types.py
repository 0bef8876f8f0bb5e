"""
Tipos de domínio: pontos da grade, pontos ponderados, conjuntos de dados e de centros.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContractError, InputDataError


def validate_grid_point(coords: Sequence[float], delta: int) -> np.ndarray:
    """
    Valida um ponto da grade [1, Delta]^d.

    Args:
        coords: Coordenadas inteiras
        delta: Limite da grade

    Returns:
        Vetor float com as coordenadas

    Raises:
        InputDataError: Coordenada fora de [1, Delta] ou não inteira
    """
    x = np.asarray(coords, dtype=float).reshape(-1)
    if x.size == 0:
        raise InputDataError("ponto sem coordenadas")
    if delta < 1:
        raise ContractError(f"Delta deve ser >= 1: {delta}")
    if np.any(x != np.rint(x)):
        raise InputDataError(f"coordenadas não inteiras: {x.tolist()}")
    if np.any(x < 1) or np.any(x > delta):
        raise InputDataError(f"coordenadas fora de [1, {delta}]: {x.tolist()}")
    return x


@dataclass(frozen=True)
class WeightedPoint:
    """Ponto com peso positivo; o elemento universal do stream."""

    point: np.ndarray
    weight: float = 1.0

    def __post_init__(self):
        if not self.weight > 0:
            raise ContractError(f"peso deve ser positivo: {self.weight}")


@dataclass
class Dataset:
    """
    Conjunto ordenado de pontos ponderados, guardado em forma colunar.

    points tem forma (n, d) e weights forma (n,).
    """

    points: np.ndarray
    weights: np.ndarray
    delta: Optional[int] = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim == 1:
            self.points = self.points.reshape(1, -1) if self.points.size else self.points.reshape(0, 0)
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if self.points.shape[0] != self.weights.shape[0]:
            raise ContractError(
                f"número de pesos ({self.weights.shape[0]}) difere do de pontos ({self.points.shape[0]})"
            )
        if self.weights.size and np.any(self.weights <= 0):
            raise ContractError("pesos devem ser positivos")

    @classmethod
    def from_points(cls, points, weights=None, delta: Optional[int] = None) -> "Dataset":
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if weights is None:
            weights = np.ones(points.shape[0])
        return cls(points, np.asarray(weights, dtype=float), delta)

    @classmethod
    def empty(cls, d: int, delta: Optional[int] = None) -> "Dataset":
        return cls(np.zeros((0, d)), np.zeros(0), delta)

    @classmethod
    def from_weighted_points(cls, items: Iterable[WeightedPoint], d: int,
                             delta: Optional[int] = None) -> "Dataset":
        items = list(items)
        if not items:
            return cls.empty(d, delta)
        return cls(np.vstack([wp.point for wp in items]), np.array([wp.weight for wp in items]), delta)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def __iter__(self):
        for point, weight in zip(self.points, self.weights):
            yield WeightedPoint(point, float(weight))

    def subset(self, indices) -> "Dataset":
        return Dataset(self.points[indices], self.weights[indices], self.delta)

    def union(self, *others: "Dataset") -> "Dataset":
        """Concatena conjuntos de mesma dimensão, preservando a ordem."""
        parts = [p for p in (self,) + others if len(p)]
        if not parts:
            return Dataset.empty(self.d, self.delta)
        dims = {p.d for p in parts}
        if len(dims) > 1:
            raise ContractError(f"dimensões diferentes na união: {sorted(dims)}")
        return Dataset(
            np.vstack([p.points for p in parts]),
            np.concatenate([p.weights for p in parts]),
            self.delta,
        )

    def support(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Pontos distintos do conjunto.

        Returns:
            Tupla (pontos distintos em ordem de primeira ocorrência,
                   peso somado por ponto distinto, índice do distinto de cada entrada)
        """
        if len(self) == 0:
            return self.points.copy(), np.zeros(0), np.zeros(0, dtype=np.int64)
        _, first, inverse = np.unique(self.points, axis=0, return_index=True, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        # Reordena para a ordem de primeira ocorrência
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        labels = rank[inverse]
        support = self.points[first[order]]
        mass = np.bincount(labels, weights=self.weights, minlength=support.shape[0])
        return support, mass, labels

    def support_size(self) -> int:
        if len(self) == 0:
            return 0
        return int(np.unique(self.points, axis=0).shape[0])


@dataclass
class CenterSet:
    """
    Até k centros, com contabilidade opcional para trocas.

    served_weight (n_c) e nearest_other (r_c) são preenchidos por
    prepare_swap_bookkeeping.
    """

    centers: np.ndarray
    served_weight: Optional[np.ndarray] = None
    nearest_other: Optional[np.ndarray] = None
    cost_estimate: Optional[float] = None

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=float)
        if self.centers.ndim == 1:
            self.centers = self.centers.reshape(1, -1)

    def __len__(self) -> int:
        return int(self.centers.shape[0])

    @property
    def d(self) -> int:
        return int(self.centers.shape[1])

    @property
    def has_bookkeeping(self) -> bool:
        return self.served_weight is not None and self.nearest_other is not None

    def without_bookkeeping(self) -> "CenterSet":
        return CenterSet(self.centers.copy())


@dataclass
class ClusteringParams:
    """Parâmetros do problema (k, z)-clustering."""

    k: int
    z: float = 2.0
    epsilon: float = 0.2
    delta: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ContractError(f"k deve ser inteiro >= 1: {self.k}")
        self.k = int(self.k)
        if self.z < 1:
            raise ContractError(f"z deve ser >= 1: {self.z}")
        if not 0 < self.epsilon < 1:
            raise ContractError(f"epsilon deve estar em (0,1): {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ContractError(f"delta deve estar em (0,1): {self.delta}")
        self.seed = int(self.seed) & 0xFFFFFFFFFFFFFFFF
