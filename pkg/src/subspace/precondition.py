"""
Precondicionador P (d x d) para a codificação de linhas.

p = 2: P = R^-1 da QR da âncora. p != 2: P = R^-1 da QR de W^(1/2-1/p) M,
com W os pesos de Lewis da âncora. O condicionamento é medido, não suposto.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from .lewis import MatrixLike, as_array, lewis_weights
from ..config import CONDITIONING_DIRECTIONS, RANK_TOL
from ..errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionReport:
    """
    Relatório do precondicionador.

    exponent é o c medido tal que ||x||_p fica em [d^-c, d^c] quando ||M P x||_p = 1.
    """

    rank: int
    full_rank: bool
    condition_number: float
    exponent: float
    lewis_converged: bool = True


def measure_conditioning(MP: np.ndarray, p: float, rng: Optional[np.random.Generator] = None,
                         n_directions: int = CONDITIONING_DIRECTIONS) -> float:
    """
    Expoente c = max |log(||x||_p / ||M P x||_p)| / log d sobre direções gaussianas.
    """
    MP = np.asarray(MP, dtype=float)
    d = MP.shape[1]
    if d < 2 or MP.shape[0] == 0:
        return 0.0
    rng = rng or np.random.default_rng(0)
    X = rng.standard_normal((d, n_directions))
    image = np.sum(np.abs(MP @ X) ** p, axis=0) ** (1.0 / p)
    norms = np.sum(np.abs(X) ** p, axis=0) ** (1.0 / p)
    keep = image > 0
    if not keep.any():
        return math.inf
    ratios = np.abs(np.log(norms[keep] / image[keep]))
    return float(np.max(ratios) / math.log(d))


def precondition(M: MatrixLike, p: float, rng: Optional[np.random.Generator] = None,
                 n_directions: int = CONDITIONING_DIRECTIONS) -> Tuple[np.ndarray, ConditionReport]:
    """
    Calcula P tal que M P é bem condicionada na norma p.

    Com posto incompleto, as direções fora do espaço das linhas recebem escala
    1/sigma_max e o relatório sai com full_rank=False.

    Args:
        M: Linhas da âncora
        p: Expoente (>= 1)
        rng: Gerador para a medição do condicionamento
        n_directions: Direções sorteadas na medição

    Returns:
        Tupla (P invertível d x d, ConditionReport)
    """
    if p < 1:
        raise ContractError(f"p deve ser >= 1: {p}")
    M = as_array(M)
    d = M.shape[1]
    if M.shape[0] == 0 or not np.any(M):
        return np.eye(d), ConditionReport(0, False, math.inf, math.inf)

    converged = True
    basis = M
    if p != 2:
        state = lewis_weights(M, p)
        converged = state.converged
        scaling = np.where(state.weights > 0, state.weights, 1.0) ** (0.5 - 1.0 / p)
        basis = M * scaling[:, None]

    _, s, Vt = linalg.svd(basis, full_matrices=False)
    rank = int(np.count_nonzero(s > RANK_TOL * s[0]))
    if rank == d:
        _, R = linalg.qr(basis, mode="economic")
        P = linalg.solve_triangular(R, np.eye(d))
    else:
        logger.warning(f"Âncora com posto {rank} < {d}; precondicionador restrito ao espaço das linhas")
        V = Vt.T
        scales = np.full(d, 1.0 / s[0])
        scales[:rank] = 1.0 / s[:rank]
        # Vt da SVD reduzida só tem min(n, d) linhas; completa a base
        if V.shape[1] < d:
            V = np.hstack([V, linalg.null_space(Vt)])
        P = V * scales[None, :]

    MP = M @ P
    sv = linalg.svd(MP, compute_uv=False)
    positive = sv[sv > RANK_TOL * sv[0]]
    condition = float(positive[0] / positive[-1]) if positive.size else math.inf
    exponent = measure_conditioning(MP, p, rng, n_directions)
    report = ConditionReport(rank, rank == d, condition, exponent, converged)
    logger.debug(f"Precondicionador p={p}: posto {rank}, condição {condition:.3g}, expoente {exponent:.3g}")
    return P, report
