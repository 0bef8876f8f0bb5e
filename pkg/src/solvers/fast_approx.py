"""
Solução rápida e grosseira: semeadura adaptativa com TreeDist da quadtree grosseira.
"""
import logging
import math
from typing import Optional

import numpy as np

from .seeding import adaptive_seed_indices
from ..config import ALPHA_DEFAULT, IOTA_DEFAULT, KAPPA_MIN
from ..geometry.types import CenterSet, Dataset
from ..quadtree.tree import CrudeQuadTree, branching_for, build_tree_checked

logger = logging.getLogger(__name__)


def fast_kz_approx(X: Dataset, k: int, z: float, rng: np.random.Generator,
                   iota: float = IOTA_DEFAULT, n_bound: Optional[int] = None,
                   tree: Optional[CrudeQuadTree] = None) -> CenterSet:
    """
    Centros por amostragem adaptativa usando TreeDist, com estimativa de custo.

    A estimativa usa a atribuição pela árvore (centro de menor TreeDist) e a
    distância verdadeira até esse centro, logo nunca fica abaixo do custo real.

    Args:
        X: Conjunto ponderado (não vazio)
        k: Número de centros
        z: Expoente
        rng: Gerador do subfluxo
        iota: Expoente da ramificação
        n_bound: Limite de n para a ramificação (padrão |X|)
        tree: Árvore já construída sobre os pontos de X

    Returns:
        CenterSet com cost_estimate preenchido
    """
    n = len(X)
    if n == 0:
        return CenterSet(np.zeros((0, X.d)), cost_estimate=0.0)
    if tree is None:
        size = n_bound or n
        kappa = max(size ** ALPHA_DEFAULT, KAPPA_MIN)
        tree = build_tree_checked(X.points, branching_for(size, iota), kappa, rng)
    idx = adaptive_seed_indices(X.points, X.weights, k, z, rng, tree.tree_dist_to)
    centers = X.points[idx]
    labels, _ = tree.assign_centers(X.points, centers)
    true = np.linalg.norm(X.points - centers[labels], axis=1)
    estimate = float(np.dot(X.weights, true ** z))
    logger.debug(f"fast_kz_approx: {len(idx)} centros, custo estimado {estimate:.4g}")
    return CenterSet(centers.copy(), cost_estimate=estimate)
