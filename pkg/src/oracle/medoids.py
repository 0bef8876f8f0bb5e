"""
Oráculos por força bruta para (k, z)-medoids e sensibilidade de clustering.

Usados apenas em testes e no subcomando `oracle` da CLI; as guardas limitam o
número de subconjuntos enumerados.
"""
import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from ..config import GRID_RESOLUTION_DEFAULT, GRID_TUPLE_GUARD, MEDOID_SUBSET_GUARD
from ..errors import ContractError, DegenerateInstanceError, ResourceGuardError
from ..geometry.types import CenterSet, Dataset

logger = logging.getLogger(__name__)

_CHUNK = 4096


@dataclass(frozen=True)
class GridSensitivity:
    """Máximo na grade e o espaçamento usado (para limitar o erro de discretização)."""

    value: float
    spacing: float
    n_candidates: int


def _combination_chunks(m: int, size: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    source = itertools.combinations(range(m), size)
    while True:
        block = list(itertools.islice(source, chunk))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64)


def _guard(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise ResourceGuardError(f"{what}: {count} combinações excedem o limite {limit}")


def exact_medoids_opt(X: Dataset, k: int, z: float,
                      guard: int = MEDOID_SUBSET_GUARD) -> Tuple[CenterSet, float]:
    """
    Mínimo exato do custo sobre todos os subconjuntos de tamanho k do suporte.

    Args:
        X: Conjunto ponderado
        k: Número de centros
        z: Expoente
        guard: Limite de subconjuntos enumerados

    Returns:
        Tupla (centros ótimos, custo ótimo); empates ficam com o primeiro subconjunto em ordem lexicográfica
    """
    if len(X) == 0:
        raise ContractError("conjunto vazio")
    support, mass, _ = X.support()
    m = support.shape[0]
    if k >= m:
        return CenterSet(support.copy()), 0.0
    _guard(comb(m, k), guard, "exact_medoids_opt")
    D = cdist(support, support) ** z
    best_cost, best = np.inf, None
    for combos in _combination_chunks(m, k):
        costs = mass @ D[:, combos].min(axis=2)
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_cost, best = float(costs[j]), combos[j]
    return CenterSet(support[best].copy()), best_cost


def _max_ratio(weight_x: float, row_x: np.ndarray, mass: np.ndarray, D: np.ndarray,
               k: int) -> Tuple[float, bool]:
    """Maior razão Cost(x,C)/Cost(X,C) sobre subconjuntos de tamanho 1..k das colunas de D."""
    best, found = 0.0, False
    m = D.shape[1]
    for size in range(1, min(k, m) + 1):
        for combos in _combination_chunks(m, size):
            den = mass @ D[:, combos].min(axis=2)
            num = weight_x * row_x[combos].min(axis=1)
            ok = den > 0
            if ok.any():
                found = True
                best = max(best, float(np.max(num[ok] / den[ok])))
    return best, found


def exact_medoids_sensitivity(X: Dataset, x: int, k: int, z: float,
                              guard: int = MEDOID_SUBSET_GUARD) -> float:
    """
    Sensibilidade exata de medoids: max_{C ⊂ suporte, |C| <= k} Cost(x,C)/Cost(X,C).

    O numerador é o custo ponderado da entrada x. Um conjunto de uma única
    entrada tem sensibilidade 1.

    Args:
        X: Conjunto ponderado
        x: Índice da entrada consultada
        k: Tamanho máximo de C
        z: Expoente
        guard: Limite de subconjuntos enumerados

    Returns:
        Sensibilidade em (0, 1]
    """
    if not 0 <= x < len(X):
        raise ContractError(f"índice fora do conjunto: {x}")
    if len(X) == 1:
        return 1.0
    support, mass, labels = X.support()
    m = support.shape[0]
    _guard(sum(comb(m, s) for s in range(1, min(k, m) + 1)), guard, "exact_medoids_sensitivity")
    D = cdist(support, support) ** z
    value, found = _max_ratio(float(X.weights[x]), D[labels[x]], mass, D, k)
    if not found:
        raise DegenerateInstanceError("degenerate instance: todo C tem custo total zero")
    return min(value, 1.0)


def _grid_candidates(X: Dataset, resolution: int) -> Tuple[np.ndarray, float]:
    lo = X.points.min(axis=0)
    hi = X.points.max(axis=0)
    axes = [np.linspace(l, h, resolution + 1) if h > l else np.array([l]) for l, h in zip(lo, hi)]
    grid = np.array(list(itertools.product(*axes)), dtype=float)
    spacing = float(np.max((hi - lo) / resolution)) if resolution > 0 else 0.0
    # O suporte entra nos candidatos: o máximo da grade nunca fica abaixo do de medoids
    candidates = np.unique(np.vstack([grid, X.points]), axis=0)
    return candidates, spacing


def grid_clustering_sensitivity(X: Dataset, x: int, k: int, z: float,
                                resolution: int = GRID_RESOLUTION_DEFAULT,
                                guard: int = GRID_TUPLE_GUARD) -> GridSensitivity:
    """
    Sensibilidade com centros contínuos, aproximada numa grade uniforme da caixa envolvente.

    Args:
        X: Conjunto ponderado
        x: Índice da entrada consultada
        k: Tamanho máximo de C
        z: Expoente
        resolution: Número de passos por eixo
        guard: Limite de tuplas de centros

    Returns:
        GridSensitivity com o máximo e o espaçamento da grade
    """
    if not 0 <= x < len(X):
        raise ContractError(f"índice fora do conjunto: {x}")
    candidates, spacing = _grid_candidates(X, resolution)
    G = candidates.shape[0]
    _guard(sum(comb(G, s) for s in range(1, min(k, G) + 1)), guard, "grid_clustering_sensitivity")
    if len(X) == 1:
        return GridSensitivity(1.0, spacing, G)
    D = cdist(X.points, candidates) ** z
    value, found = _max_ratio(float(X.weights[x]), D[x], X.weights, D, k)
    if not found:
        raise DegenerateInstanceError("degenerate instance: todo C tem custo total zero")
    return GridSensitivity(min(value, 1.0), spacing, G)
