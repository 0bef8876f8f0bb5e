"""
Busca local de k-medoids por trocas simples (centro <-> não-centro).
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from .seeding import adaptive_seed_indices
from ..config import LOCAL_SEARCH_MAX_CANDIDATES
from ..geometry.types import CenterSet, Dataset

logger = logging.getLogger(__name__)

# Melhora relativa mínima para aceitar uma troca
_MIN_RELATIVE_GAIN = 1e-12


def default_max_iters(k: int, n: int, delta: Optional[float]) -> int:
    """Limite padrão de iterações: ceil(2k * ln(n * Delta))."""
    scale = max(float(n) * float(delta or 1.0), math.e)
    return max(1, int(math.ceil(2 * k * math.log(scale))))


def _candidate_pool(support: np.ndarray, mass: np.ndarray, init: np.ndarray, k: int, z: float,
                    max_candidates: int, rng: np.random.Generator) -> np.ndarray:
    m = support.shape[0]
    if m <= max_candidates:
        return np.arange(m)
    # Metade por massa, metade por D^z em relação à solução inicial
    near = cdist(support, support[init]).min(axis=1) ** z * mass
    half = max_candidates // 2
    by_mass = rng.choice(m, size=half, replace=False, p=mass / mass.sum())
    if near.sum() > 0:
        positive = int(np.count_nonzero(near))
        by_far = rng.choice(m, size=min(max_candidates - half, positive), replace=False, p=near / near.sum())
    else:
        by_far = np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate([init, by_mass, by_far]).astype(np.int64))


def local_search_medoids(X: Dataset, k: int, z: float, rng: np.random.Generator,
                         max_iters: Optional[int] = None,
                         max_candidates: int = LOCAL_SEARCH_MAX_CANDIDATES,
                         init: Optional[CenterSet] = None) -> CenterSet:
    """
    k-medoids por busca local com trocas simples.

    Cada iteração aplica a melhor troca (centro atual, candidato do suporte).
    O laço termina quando nenhuma troca reduz o custo, o que implica que
    nenhuma troca melhora o custo por um fator abaixo de (1 - 1/(2k)), ou ao
    atingir max_iters.

    Args:
        X: Conjunto ponderado
        k: Número de centros
        z: Expoente
        rng: Gerador do subfluxo
        max_iters: Limite de iterações (padrão 2k ln(n Delta))
        max_candidates: Tamanho máximo do conjunto de candidatos à troca
        init: Solução inicial (partida a quente); pontos fora do suporte são ignorados

    Returns:
        CenterSet com k pontos do suporte e custo em cost_estimate
    """
    support, mass, _ = X.support()
    m = support.shape[0]
    if m <= k:
        return CenterSet(support.copy(), cost_estimate=0.0)
    if max_iters is None:
        max_iters = default_max_iters(k, len(X), X.delta)

    init_idx = None
    if init is not None and len(init):
        # Mapeia a solução inicial para índices do suporte
        D0 = cdist(init.centers, support)
        hits = [int(np.argmin(row)) for row in D0 if row.min() == 0]
        hits = list(dict.fromkeys(hits))
        if len(hits) == k:
            init_idx = np.array(hits, dtype=np.int64)
    if init_idx is None:
        init_idx = np.array(adaptive_seed_indices(support, mass, k, z, rng), dtype=np.int64)
    if init_idx.size < k:
        # Completa com pontos ainda não escolhidos
        rest = np.setdiff1d(np.arange(m), init_idx)[: k - init_idx.size]
        init_idx = np.concatenate([init_idx, rest])

    cand = _candidate_pool(support, mass, init_idx, k, z, max_candidates, rng)
    position = {int(c): i for i, c in enumerate(cand)}
    centers = np.array([position[int(c)] for c in init_idx], dtype=np.int64)
    D = cdist(support, support[cand]) ** z

    for iteration in range(max_iters):
        cur = D[:, centers]
        order = np.argsort(cur, axis=1, kind="stable")
        nearest_pos = order[:, 0]
        d1 = cur[np.arange(m), nearest_pos]
        d2 = cur[np.arange(m), order[:, 1]] if k > 1 else np.full(m, np.inf)
        cost = float(mass @ d1)
        best_cost, best_swap = cost, None
        in_solution = np.zeros(cand.size, dtype=bool)
        in_solution[centers] = True
        for i in range(k):
            # Custo sem o centro i, depois trocando por cada candidato
            base = np.where(nearest_pos == i, d2, d1)
            swap_costs = mass @ np.minimum(base[:, None], D)
            swap_costs[in_solution] = np.inf
            j = int(np.argmin(swap_costs))
            if swap_costs[j] < best_cost:
                best_cost, best_swap = float(swap_costs[j]), (i, j)
        if best_swap is None or best_cost >= cost * (1.0 - _MIN_RELATIVE_GAIN):
            break
        centers[best_swap[0]] = best_swap[1]
    else:
        logger.debug(f"Busca local atingiu o limite de {max_iters} iterações")

    final = float(mass @ D[:, centers].min(axis=1))
    return CenterSet(support[cand[centers]].copy(), cost_estimate=final)
