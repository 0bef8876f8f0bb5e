"""
Avaliação de coresets e embeddings: erro relativo de custo e sanduíche espectral.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy import linalg

from ..config import RANK_TOL
from ..errors import ContractError, InputDataError
from ..geometry.metrics import clustering_cost
from ..geometry.types import CenterSet, Dataset
from ..solvers.local_search import local_search_medoids
from ..subspace.lewis import MatrixLike, as_array
from ..utils.rng import derive_rng

logger = logging.getLogger(__name__)


def random_center_sets(X: Dataset, k: int, count: int, rng: np.random.Generator) -> List[CenterSet]:
    """
    Conjuntos de centros de teste: metade uniforme na caixa envolvente de X,
    metade sorteada entre os pontos de X.
    """
    if len(X) == 0 or count <= 0:
        return []
    lo, hi = X.points.min(axis=0), X.points.max(axis=0)
    sets = []
    for i in range(count):
        if i % 2 == 0:
            centers = rng.uniform(lo, hi, size=(k, X.d))
        else:
            centers = X.points[rng.integers(0, len(X), size=k)]
        sets.append(CenterSet(centers))
    return sets


def local_search_center_sets(X: Dataset, k: int, z: float, count: int, seed: int) -> List[CenterSet]:
    """Soluções de busca local em X com sementes distintas."""
    return [local_search_medoids(X, k, z, derive_rng(seed, "eval-local-search", i)) for i in range(count)]


def relative_cost_errors(X: Dataset, S: Dataset, center_sets: Sequence[CenterSet], z: float) -> np.ndarray:
    """
    |Cost(S, C) / Cost(X, C) - 1| para cada conjunto de centros.

    Conjuntos com Cost(X, C) = 0 contam erro 0 se Cost(S, C) também for 0, senão infinito.

    Raises:
        InputDataError: Dimensões de X e S diferentes
    """
    if len(S) and len(X) and S.d != X.d:
        raise InputDataError(f"dimensão do artefato ({S.d}) difere da do conjunto ({X.d})")
    errors = []
    for C in center_sets:
        full = clustering_cost(X, C, z)
        approx = clustering_cost(S, C, z) if len(S) else 0.0
        if full == 0:
            errors.append(0.0 if approx == 0 else np.inf)
        else:
            errors.append(abs(approx / full - 1.0))
    return np.asarray(errors, dtype=float)


def evaluate_clustering(X: Dataset, S: Dataset, k: int, z: float, queries: int = 500,
                        local_search_sets: int = 20, seed: int = 0) -> Dict[str, Any]:
    """
    Erro relativo máximo e médio de custo em centros aleatórios e de busca local.

    Args:
        X: Conjunto original
        S: Coreset (decodificado)
        k: Número de centros
        z: Expoente
        queries: Quantidade de conjuntos aleatórios
        local_search_sets: Quantidade de soluções de busca local
        seed: Semente da avaliação

    Returns:
        Dicionário com max_error, mean_error e contagens
    """
    if len(X) == 0:
        return {'mode': 'clustering', 'max_error': 0.0, 'mean_error': 0.0, 'n_queries': 0}
    sets = random_center_sets(X, k, queries, derive_rng(seed, "eval-queries"))
    sets += local_search_center_sets(X, k, z, local_search_sets, seed)
    errors = relative_cost_errors(X, S, sets, z)
    logger.info(f"Avaliação: erro máximo {errors.max():.4f} em {errors.size} consultas")
    return {
        'mode': 'clustering',
        'max_error': float(errors.max()),
        'mean_error': float(errors.mean()),
        'n_queries': int(errors.size),
        'n_random': int(queries),
        'n_local_search': int(local_search_sets),
        'coreset_size': len(S),
        'n': len(X),
    }


def spectral_sandwich(A: MatrixLike, B: MatrixLike, tol: float = RANK_TOL) -> Dict[str, float]:
    """
    Extremos de ||Bx||^2 / ||Ax||^2 no espaço das linhas de A (autovalores generalizados).

    Direções do espaço de A em que B se anula dão mínimo 0.

    Raises:
        InputDataError: Número de colunas diferente
    """
    A, B = as_array(A), as_array(B)
    if A.shape[1] != B.shape[1]:
        raise InputDataError(f"dimensão do artefato ({B.shape[1]}) difere da da matriz ({A.shape[1]})")
    gram_a = A.T @ A
    eigvals, eigvecs = linalg.eigh(gram_a)
    top = eigvals[-1] if eigvals.size else 0.0
    keep = eigvals > tol * max(top, 0.0)
    if not keep.any():
        raise ContractError("matriz de referência nula")
    # Restringe ao espaço das linhas e normaliza A^T A para a identidade
    W = eigvecs[:, keep] / np.sqrt(eigvals[keep])[None, :]
    gram_b = B.T @ B if B.shape[0] else np.zeros_like(gram_a)
    spectrum = linalg.eigvalsh(W.T @ gram_b @ W)
    return {'min': float(spectrum.min()), 'max': float(spectrum.max()), 'rank': int(keep.sum())}


def direction_ratio_extremes(A: MatrixLike, B: MatrixLike, p: float, n_directions: int = 10_000,
                             rng: Optional[np.random.Generator] = None) -> Dict[str, float]:
    """
    Extremos de ||Bx||_p^p / ||Ax||_p^p sobre direções gaussianas.
    """
    A, B = as_array(A), as_array(B)
    if A.shape[1] != B.shape[1]:
        raise InputDataError(f"dimensão do artefato ({B.shape[1]}) difere da da matriz ({A.shape[1]})")
    rng = rng or np.random.default_rng(0)
    X = rng.standard_normal((A.shape[1], n_directions))
    full = np.sum(np.abs(A @ X) ** p, axis=0)
    approx = np.sum(np.abs(B @ X) ** p, axis=0) if B.shape[0] else np.zeros(n_directions)
    keep = full > 0
    ratios = approx[keep] / full[keep]
    return {'min': float(ratios.min()), 'max': float(ratios.max()), 'n_directions': int(keep.sum())}


def evaluate_embedding(A: MatrixLike, B: MatrixLike, p: float, n_directions: int = 10_000,
                       seed: int = 0) -> Dict[str, Any]:
    """
    Sanduíche espectral para p = 2; extremos por direções amostradas para os demais p.

    Em ambos os casos max_error = max(1 - min, max - 1).
    """
    if p == 2:
        extremes = spectral_sandwich(A, B)
        method = 'spectral'
    else:
        extremes = direction_ratio_extremes(A, B, p, n_directions, derive_rng(seed, "eval-directions"))
        method = 'directions'
    result = {'mode': 'embedding', 'method': method, 'p': float(p),
              'ratio_min': extremes['min'], 'ratio_max': extremes['max'],
              'max_error': float(max(1.0 - extremes['min'], extremes['max'] - 1.0))}
    logger.info(f"Avaliação do embedding ({method}): razões em [{extremes['min']:.4f}, {extremes['max']:.4f}]")
    return result
