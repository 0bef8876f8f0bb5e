"""
Semeadura por amostragem adaptativa (D^z): cada novo centro é sorteado com
probabilidade proporcional a peso * (distância estimada aos centros atuais)^z.
"""
import logging
from typing import Callable, List, Optional

import numpy as np
from scipy.spatial.distance import cdist

from ..geometry.types import CenterSet, Dataset

logger = logging.getLogger(__name__)

# (pontos (n,d), centro (d,)) -> distâncias (n,)
DistEstimator = Callable[[np.ndarray, np.ndarray], np.ndarray]


def exact_distance(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    return cdist(points, center.reshape(1, -1)).reshape(-1)


def adaptive_seed_indices(points: np.ndarray, weights: np.ndarray, k: int, z: float,
                          rng: np.random.Generator,
                          dist_estimator: Optional[DistEstimator] = None) -> List[int]:
    """
    Índices dos pontos escolhidos pela semeadura adaptativa.

    Para quando a massa restante zera (menos de k pontos distintos).
    """
    estimator = dist_estimator or exact_distance
    n = points.shape[0]
    if n == 0 or k < 1:
        return []
    total = float(weights.sum())
    first = int(rng.choice(n, p=weights / total))
    chosen = [first]
    nearest = estimator(points, points[first])
    while len(chosen) < k:
        mass = weights * nearest ** z
        mass_total = float(mass.sum())
        if not mass_total > 0:
            break
        nxt = int(rng.choice(n, p=mass / mass_total))
        chosen.append(nxt)
        nearest = np.minimum(nearest, estimator(points, points[nxt]))
    return chosen


def adaptive_sampling_seed(X: Dataset, k: int, z: float, rng: np.random.Generator,
                           dist_estimator: Optional[DistEstimator] = None) -> CenterSet:
    """
    Sorteia até k centros por amostragem adaptativa.

    Args:
        X: Conjunto ponderado (não vazio)
        k: Número de centros
        z: Expoente da distância
        rng: Gerador do subfluxo
        dist_estimator: Distância exata (padrão) ou TreeDist

    Returns:
        CenterSet com os pontos sorteados
    """
    idx = adaptive_seed_indices(X.points, X.weights, k, z, rng, dist_estimator)
    if len(idx) < k:
        logger.debug(f"Semeadura parou com {len(idx)} de {k} centros (poucos pontos distintos)")
    return CenterSet(X.points[idx])
