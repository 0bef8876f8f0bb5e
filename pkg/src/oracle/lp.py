"""
Oráculo de sensibilidade Lp de uma linha: max_y |<a_t, y>|^p / ||A y||_p^p.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import LP_ORACLE_DIRECTIONS
from ..errors import ContractError

logger = logging.getLogger(__name__)

_MAX_DIM = 6
_CHUNK = 8192


@dataclass(frozen=True)
class LpSensitivity:
    """Valor da sensibilidade e como foi obtido."""

    value: float
    exact: bool
    n_directions: int = 0


def _ratios(A: np.ndarray, a: np.ndarray, Y: np.ndarray, p: float) -> np.ndarray:
    num = np.abs(Y @ a) ** p
    den = (np.abs(Y @ A.T) ** p).sum(axis=1)
    out = np.zeros(Y.shape[0])
    ok = den > 0
    out[ok] = num[ok] / den[ok]
    return out


def _polish(A: np.ndarray, a: np.ndarray, y: np.ndarray, p: float, rounds: int = 40) -> float:
    """Descida coordenada com passos decrescentes a partir de y."""
    best = float(_ratios(A, a, y.reshape(1, -1), p)[0])
    scale = float(np.linalg.norm(y)) or 1.0
    step = 0.5 * scale
    for _ in range(rounds):
        improved = False
        for j in range(y.size):
            for sign in (1.0, -1.0):
                trial = y.copy()
                trial[j] += sign * step
                value = float(_ratios(A, a, trial.reshape(1, -1), p)[0])
                if value > best:
                    best, y, improved = value, trial, True
        if not improved:
            step *= 0.5
    return best


def exact_lp_sensitivity(A, t: int, p: float, rng: Optional[np.random.Generator] = None,
                         n_directions: int = LP_ORACLE_DIRECTIONS) -> LpSensitivity:
    """
    Sensibilidade Lp da linha t.

    Para p = 2 usa a forma fechada a_t^T (A^T A)^+ a_t. Para p != 2 sorteia
    direções gaussianas e refina as melhores por descida coordenada; o valor
    é então uma aproximação por baixo.

    Args:
        A: Matriz (n, d) com d <= 6
        t: Índice da linha
        p: Expoente (>= 1)
        rng: Gerador para as direções
        n_directions: Número de direções sorteadas

    Returns:
        LpSensitivity
    """
    A = np.asarray(A, dtype=float)
    n, d = A.shape
    if d > _MAX_DIM:
        raise ContractError(f"oráculo Lp limitado a d <= {_MAX_DIM}: {d}")
    if p < 1:
        raise ContractError(f"p deve ser >= 1: {p}")
    if not 0 <= t < n:
        raise ContractError(f"linha fora da matriz: {t}")
    a = A[t]
    if not np.any(a):
        return LpSensitivity(0.0, True)
    others = np.delete(A, t, axis=0)
    rank_all = np.linalg.matrix_rank(A)
    rank_others = np.linalg.matrix_rank(others) if others.size else 0
    if rank_others < rank_all:
        # a_t fora do espaço das demais linhas: existe y que só a_t enxerga
        return LpSensitivity(1.0, True)
    gram_pinv = np.linalg.pinv(A.T @ A)
    if p == 2:
        return LpSensitivity(float(min(1.0, a @ gram_pinv @ a)), True)

    rng = rng or np.random.default_rng(0)
    seeds = [gram_pinv @ a]
    best_values = []
    remaining = n_directions
    while remaining > 0:
        size = min(_CHUNK, remaining)
        Y = rng.standard_normal((size, d))
        r = _ratios(A, a, Y, p)
        top = np.argsort(r)[-3:]
        best_values.extend((float(r[i]), Y[i]) for i in top)
        remaining -= size
    best_values.sort(key=lambda item: item[0], reverse=True)
    seeds.extend(y for _, y in best_values[:5])
    value = max(_polish(A, a, y.copy(), p) for y in seeds)
    return LpSensitivity(float(min(1.0, value)), False, n_directions)
