"""
Distâncias, custo de clustering, atribuição ao centro mais próximo e contabilidade de trocas.
"""
import math
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from .types import CenterSet, Dataset
from ..errors import ContractError, NoCentersError


def dist(a, b) -> float:
    """
    Distância euclidiana entre dois vetores.

    Args:
        a: Primeiro vetor
        b: Segundo vetor

    Returns:
        ||a - b||_2
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise ContractError(f"dimensões diferentes: {a.shape[0]} e {b.shape[0]}")
    return float(np.linalg.norm(a - b))


def _check_centers(X: Dataset, C: CenterSet) -> None:
    if len(C) == 0:
        raise NoCentersError()
    if len(X) and X.d != C.d:
        raise ContractError(f"dimensões diferentes: dados {X.d}, centros {C.d}")


def center_distances(X: Dataset, C: CenterSet) -> np.ndarray:
    """Matriz (n, |C|) de distâncias ponto-centro."""
    _check_centers(X, C)
    if len(X) == 0:
        return np.zeros((0, len(C)))
    return cdist(X.points, C.centers)


def assign_nearest(X: Dataset, C: CenterSet) -> np.ndarray:
    """
    Atribui cada ponto ao centro mais próximo; empates vão para o menor índice.

    Returns:
        Array (n,) com o índice do centro de cada ponto
    """
    D = center_distances(X, C)
    if D.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    # argmin devolve a primeira ocorrência do mínimo
    return np.argmin(D, axis=1).astype(np.int64)


def clustering_cost(X: Dataset, C: CenterSet, z: float) -> float:
    """
    Custo sum_x w(x) * dist(x, C)^z.

    Args:
        X: Conjunto ponderado
        C: Centros (não vazio)
        z: Expoente da distância

    Returns:
        Custo total
    """
    D = center_distances(X, C)
    if D.shape[0] == 0:
        return 0.0
    return float(np.dot(X.weights, D.min(axis=1) ** z))


def point_costs(X: Dataset, C: CenterSet, z: float) -> np.ndarray:
    """Custo ponderado de cada entrada."""
    D = center_distances(X, C)
    if D.shape[0] == 0:
        return np.zeros(0)
    return X.weights * D.min(axis=1) ** z


def grid_diameter(d: int, delta: Optional[float]) -> float:
    return math.sqrt(d) * float(delta if delta else 1.0)


def prepare_swap_bookkeeping(X: Dataset, C: CenterSet, delta: Optional[float] = None) -> CenterSet:
    """
    Preenche n_c (peso servido) e r_c (distância ao outro centro mais próximo).

    Para um único centro, r_c é o diâmetro da grade sqrt(d) * Delta.

    Args:
        X: Conjunto ponderado
        C: Centros
        delta: Limite da grade (usa X.delta se omitido)

    Returns:
        Novo CenterSet com a contabilidade preenchida
    """
    _check_centers(X, C)
    m = len(C)
    labels = assign_nearest(X, C)
    served = np.bincount(labels, weights=X.weights, minlength=m).astype(float) if len(X) else np.zeros(m)
    if m == 1:
        bound = delta if delta is not None else X.delta
        if bound is None:
            bound = float(np.max(np.abs(X.points))) if len(X) else 1.0
        nearest = np.array([grid_diameter(C.d, bound)])
    else:
        CC = cdist(C.centers, C.centers)
        np.fill_diagonal(CC, np.inf)
        nearest = CC.min(axis=1)
    return CenterSet(C.centers.copy(), served, nearest, C.cost_estimate)
