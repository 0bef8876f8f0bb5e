"""
BatchSens: sensibilidades de fator constante para um lote de consultas.

Para cada consulta x e cada candidato p em Z ∪ B, com r = dist(x, p):
    razão(p) = w_x * r^z / (Psi_p + n_b * r^z)
onde Psi_p é o custo da solução obrigada a conter p e n_b é o peso servido
pelos centros dessa solução dentro da bola B_{r/2}(x).
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from .base_estimator import (
    BaseSensitivityEstimator,
    Quality,
    SensitivityEstimate,
    coincident_share,
    make_estimate,
)
from ..errors import ContractError
from ..geometry.metrics import clustering_cost, prepare_swap_bookkeeping
from ..geometry.types import CenterSet, Dataset
from ..solvers.constrained import NEW_POINT, constrained_costs
from ..solvers.local_search import local_search_medoids

logger = logging.getLogger(__name__)


def batch_claimed_factor(z: float) -> float:
    return 2.0 ** (3 * z + 10)


def _radial_sweep(x: np.ndarray, weight_x: float, candidates: np.ndarray, psi_total: np.ndarray,
                  removed: np.ndarray, target: np.ndarray, S: CenterSet, z: float) -> float:
    """
    Percorre os candidatos em ordem de distância a x mantendo n_b.

    O peso dentro de B_{r/2}(x) vem das somas prefixadas dos centros de S
    ordenados por distância a x; a solução com p difere de S em no máximo
    dois centros (o removido sai, o alvo recebe o peso dele).
    """
    r = np.linalg.norm(candidates - x, axis=1)
    order = np.argsort(r, kind="stable")
    r_sorted = r[order]
    keep = r_sorted > 0
    if not keep.any():
        return 0.0
    order, r_sorted = order[keep], r_sorted[keep]
    half = r_sorted / 2.0

    dc = np.linalg.norm(S.centers - x, axis=1)
    c_order = np.argsort(dc, kind="stable")
    prefix = np.concatenate([[0.0], np.cumsum(S.served_weight[c_order])])
    inside = prefix[np.searchsorted(dc[c_order], half, side="right")]

    gone = removed[order]
    moved = S.served_weight[gone]
    inside = inside - np.where(dc[gone] <= half, moved, 0.0)
    tgt = target[order]
    tgt_in = (tgt != NEW_POINT) & (dc[np.maximum(tgt, 0)] <= half)
    n_b = inside + np.where(tgt_in, moved, 0.0)

    rz = r_sorted ** z
    den = psi_total[order] + np.maximum(n_b, 0.0) * rz
    with np.errstate(divide="ignore"):
        ratios = np.where(den > 0, weight_x * rz / np.where(den > 0, den, 1.0), np.inf)
    return float(np.max(ratios))


def batch_sens_with_solution(Z: Dataset, B: Dataset, k: int, z: float, rng: np.random.Generator,
                             solution: Optional[CenterSet] = None
                             ) -> Tuple[List[SensitivityEstimate], Optional[CenterSet]]:
    """
    Sensibilidades de fator constante dos pontos de B em relação a Z ∪ B.

    Args:
        Z: Coreset de fator constante do histórico (pode ser vazio)
        B: Lote de consultas
        k: Número de centros
        z: Expoente
        rng: Gerador do subfluxo
        solution: Solução anterior para partida a quente da busca local

    Returns:
        Tupla (uma SensitivityEstimate por ponto de B, solução de fator constante usada)
    """
    if len(B) == 0:
        return [], solution
    U = Z.union(B) if len(Z) else B
    if len(U) == 0:
        raise ContractError("Z ∪ B vazio")
    start = len(U) - len(B)
    factor = batch_claimed_factor(z)

    if U.support_size() <= k:
        shares = coincident_share(U, start)
        return [make_estimate(s, Quality.EXACT) for s in shares], solution

    S = local_search_medoids(U, k, z, rng, init=solution)
    S = prepare_swap_bookkeeping(U, S)
    base_cost = clustering_cost(U, S, z)
    constrained = constrained_costs(S, U.points, z, base_cost)

    estimates = []
    for i in range(start, len(U)):
        raw = _radial_sweep(U.points[i], float(U.weights[i]), U.points, constrained.total,
                            constrained.removed, constrained.target, S, z)
        estimates.append(make_estimate(raw, Quality.CONSTANT_FACTOR, factor))
    return estimates, S.without_bookkeeping()


def batch_sens(Z: Dataset, B: Dataset, k: int, z: float, rng: np.random.Generator,
               solution: Optional[CenterSet] = None) -> List[SensitivityEstimate]:
    """Sensibilidades de fator constante dos pontos de B em relação a Z ∪ B."""
    return batch_sens_with_solution(Z, B, k, z, rng, solution)[0]


class BatchSensEstimator(BaseSensitivityEstimator):
    """
    Estimador de fator constante (BatchSens) com partida a quente entre lotes.
    """

    quality = Quality.CONSTANT_FACTOR

    def __init__(self, k: int, z: float, rng: np.random.Generator):
        super().__init__(k, z)
        self.rng = rng
        self._solution: Optional[CenterSet] = None

    def estimate(self, summary: Dataset, batch: Dataset) -> List[SensitivityEstimate]:
        estimates, self._solution = batch_sens_with_solution(
            summary, batch, self.k, self.z, self.rng, solution=self._solution)
        return estimates
