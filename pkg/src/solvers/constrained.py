"""
Custo aproximado de uma solução de k-medoids obrigada a conter um ponto fixo x.

A solução é C sem um centro c, mais x. Para cada c, o aumento de custo é
estimado por n_c * (min_{p em C∪{x}\\{c}} dist(c, p))^z; só o centro u mais
próximo de x tem r_u recalculado contra x, os demais usam o r_c em cache.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ContractError, NoCentersError
from ..geometry.metrics import clustering_cost, prepare_swap_bookkeeping
from ..geometry.types import CenterSet, Dataset

# Alvo da realocação quando o próprio ponto x absorve o centro removido
NEW_POINT = -1


@dataclass(frozen=True)
class SwapCandidate:
    """Centro removido e o aumento estimado de custo psi."""

    removed_center: int
    psi: float

    def __post_init__(self):
        if self.psi < 0:
            raise ContractError(f"psi negativo: {self.psi}")


@dataclass
class ConstrainedBatch:
    """Resultado vetorizado para várias consultas."""

    removed: np.ndarray  # índice do centro removido por consulta
    psi: np.ndarray
    total: np.ndarray  # Psi = Cost(X,C) + psi
    target: np.ndarray  # para onde vai o peso do removido (NEW_POINT = a consulta)
    nearest: np.ndarray  # u, centro mais próximo de cada consulta


def _nearest_other_index(C: CenterSet) -> np.ndarray:
    if len(C) == 1:
        return np.array([NEW_POINT])
    CC = cdist(C.centers, C.centers)
    np.fill_diagonal(CC, np.inf)
    return np.argmin(CC, axis=1)


def constrained_costs(C: CenterSet, queries: np.ndarray, z: float, base_cost: float) -> ConstrainedBatch:
    """
    Versão vetorizada de constrained_with_center para um lote de consultas.

    Args:
        C: Centros com contabilidade (n_c, r_c)
        queries: Matriz (q, d) de pontos fixos
        z: Expoente
        base_cost: Cost(X, C) já calculado

    Returns:
        ConstrainedBatch com uma entrada por consulta
    """
    if len(C) == 0:
        raise NoCentersError()
    if not C.has_bookkeeping:
        raise ContractError("contabilidade de trocas ausente (use prepare_swap_bookkeeping)")
    queries = np.asarray(queries, dtype=float).reshape(-1, C.d)
    m = len(C)
    n_c = C.served_weight
    r_c = C.nearest_other
    cached = n_c * r_c ** z

    Dq = cdist(queries, C.centers)
    u = np.argmin(Dq, axis=1)
    du = Dq[np.arange(queries.shape[0]), u]
    refreshed_r = np.minimum(r_c[u], du)
    val_u = n_c[u] * refreshed_r ** z

    # Mínimo de cached excluindo u: melhor e segundo melhor globais
    order = np.argsort(cached, kind="stable")
    best = order[0]
    second = order[1] if m > 1 else -1
    excl_idx = np.where(u == best, second, best)
    excl_val = np.where(excl_idx >= 0, cached[np.maximum(excl_idx, 0)], np.inf)

    take_u = (val_u < excl_val) | ((val_u == excl_val) & (u < excl_idx)) | (excl_idx < 0)
    removed = np.where(take_u, u, excl_idx).astype(np.int64)
    psi = np.where(take_u, val_u, excl_val)

    nn_other = _nearest_other_index(C)
    target = nn_other[removed].copy()
    # Se u sai e x está mais perto dele que qualquer outro centro, x absorve o peso
    target[take_u & (du < r_c[u])] = NEW_POINT
    return ConstrainedBatch(removed, psi, base_cost + psi, target, u.astype(np.int64))


def constrained_with_center(X: Dataset, C: CenterSet, x, z: float,
                            base_cost: Optional[float] = None) -> Tuple[SwapCandidate, float]:
    """
    Aproxima o custo da melhor solução que contém x.

    Args:
        X: Conjunto ponderado
        C: Solução de fator constante (contabilidade é preenchida se faltar)
        x: Ponto que deve estar na solução
        z: Expoente
        base_cost: Cost(X, C), se já conhecido

    Returns:
        Tupla (SwapCandidate, Psi)
    """
    if len(C) == 0:
        raise NoCentersError()
    if not C.has_bookkeeping:
        C = prepare_swap_bookkeeping(X, C)
    if base_cost is None:
        base_cost = clustering_cost(X, C, z)
    batch = constrained_costs(C, np.asarray(x, dtype=float).reshape(1, -1), z, base_cost)
    return SwapCandidate(int(batch.removed[0]), float(batch.psi[0])), float(batch.total[0])
