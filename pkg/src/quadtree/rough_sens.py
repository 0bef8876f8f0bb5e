"""
RoughSens: sensibilidades grosseiras (fator n^O(alpha)) usando a quadtree.

Para cada consulta x e cada nível beta da árvore escolhe-se um candidato p que
entra na célula de x exatamente no nível beta; com D_beta = (sqrt(d) zeta^beta)^z,
    razão(beta) = w_x * D_beta / (Psi_p + n_beta * D_beta)
onde n_beta é o peso servido pelos centros que já dividiam a célula de x
abaixo do nível beta.
"""
import logging
from typing import List, Optional

import numpy as np
from scipy.spatial.distance import cdist

from .tree import CrudeQuadTree, branching_for, build_tree_checked
from ..config import ALPHA_DEFAULT, IOTA_DEFAULT, KAPPA_MIN
from ..errors import ContractError
from ..geometry.metrics import grid_diameter
from ..geometry.types import CenterSet, Dataset
from ..sensitivity.base_estimator import (
    BaseSensitivityEstimator,
    Quality,
    SensitivityEstimate,
    coincident_share,
    make_estimate,
)
from ..solvers.constrained import NEW_POINT, constrained_costs

logger = logging.getLogger(__name__)


def _tree_bookkeeping(points: np.ndarray, weights: np.ndarray, S: CenterSet, tree: CrudeQuadTree,
                      delta: float) -> CenterSet:
    """n_c pela atribuição da árvore; r_c exato entre os centros."""
    labels, _ = tree.assign_centers(points, S.centers)
    served = np.bincount(labels, weights=weights, minlength=len(S)).astype(float)
    if len(S) == 1:
        nearest = np.array([grid_diameter(S.d, delta)])
    else:
        CC = cdist(S.centers, S.centers)
        np.fill_diagonal(CC, np.inf)
        nearest = CC.min(axis=1)
    return CenterSet(S.centers, served, nearest, S.cost_estimate)


def rough_claimed_factor(z: float, kappa: float, accepted: bool, zeta: int) -> float:
    factor = 2.0 ** (3 * z + 10) * kappa ** (2 * z)
    return factor if accepted else factor * float(zeta) ** z


def rough_sens(Z: Dataset, B: Dataset, k: int, z: float, rng: np.random.Generator,
               alpha: float = ALPHA_DEFAULT, iota: float = IOTA_DEFAULT,
               n_bound: Optional[int] = None) -> List[SensitivityEstimate]:
    """
    Sensibilidades grosseiras dos pontos de B em relação a Z ∪ B.

    Args:
        Z: Resumo do histórico (pode ser vazio)
        B: Lote de consultas
        k: Número de centros
        z: Expoente
        rng: Gerador do subfluxo
        alpha: Expoente do fator de margem kappa = n^alpha
        iota: Expoente da ramificação zeta = n^iota
        n_bound: Limite de n (padrão |Z ∪ B|)

    Returns:
        Uma SensitivityEstimate (qualidade crude) por ponto de B
    """
    # import local: solvers.fast_approx depende de quadtree.tree
    from ..solvers.fast_approx import fast_kz_approx

    if len(B) == 0:
        return []
    U = Z.union(B) if len(Z) else B
    if len(U) == 0:
        raise ContractError("Z ∪ B vazio")
    start = len(U) - len(B)
    if U.support_size() <= k:
        return [make_estimate(s, Quality.EXACT) for s in coincident_share(U, start)]

    n = int(n_bound or len(U))
    kappa = max(float(n) ** alpha, KAPPA_MIN)
    zeta = branching_for(n, iota)
    # Translada para a grade [1, extensão]
    points = U.points - U.points.min(axis=0) + 1.0
    delta = float(points.max())
    tree = build_tree_checked(points, zeta, kappa, rng, delta=delta)
    S = fast_kz_approx(Dataset(points, U.weights), k, z, rng, tree=tree)
    S = _tree_bookkeeping(points, U.weights, S, tree, delta)
    tree.index_centers(S.centers)
    base_cost = float(S.cost_estimate or 0.0)
    factor = rough_claimed_factor(z, kappa, tree.accepted, zeta)

    estimates = []
    for i in range(start, len(U)):
        x = points[i]
        joined = tree.join_levels(points, x)
        true = np.linalg.norm(points - x, axis=1)
        distinct = true > 0
        levels = np.unique(joined[distinct])
        # Em cada nível, o candidato mais próximo que entra na célula de x ali
        chosen = []
        for beta in levels:
            members = np.flatnonzero(distinct & (joined == beta))
            chosen.append(members[np.argmin(true[members])])
        batch = constrained_costs(S, points[np.array(chosen)], z, base_cost)
        at_x = np.flatnonzero(np.all(S.centers == x, axis=1)).tolist()
        best = 0.0
        for j, beta in enumerate(levels):
            below = at_x if beta == 0 else tree.centers_in_cell(x, int(beta) - 1)
            removed, target = int(batch.removed[j]), int(batch.target[j])
            n_beta = float(sum(S.served_weight[c] for c in below if c != removed))
            if target != NEW_POINT and target in below:
                n_beta += float(S.served_weight[removed])
            D_beta = float(tree.level_distance(int(beta))) ** z
            den = float(batch.total[j]) + n_beta * D_beta
            ratio = U.weights[i] * D_beta / den if den > 0 else np.inf
            best = max(best, float(ratio))
        estimates.append(make_estimate(best, Quality.CRUDE, factor))
    if not tree.accepted:
        logger.debug(f"RoughSens com árvore não aceita; fator declarado ampliado para {factor:.3g}")
    return estimates


class RoughSensEstimator(BaseSensitivityEstimator):
    """Estimador grosseiro (RoughSens) para o primeiro estágio do filtro."""

    quality = Quality.CRUDE

    def __init__(self, k: int, z: float, rng: np.random.Generator, alpha: float = ALPHA_DEFAULT,
                 iota: float = IOTA_DEFAULT, n_bound: Optional[int] = None):
        super().__init__(k, z)
        self.rng = rng
        self.alpha = alpha
        self.iota = iota
        self.n_bound = n_bound

    def estimate(self, summary: Dataset, batch: Dataset) -> List[SensitivityEstimate]:
        return rough_sens(summary, batch, self.k, self.z, self.rng, self.alpha, self.iota, self.n_bound)
