"""
Matrizes de linhas, leverage scores e pesos de Lewis.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import linalg

from ..config import LEWIS_DAMPING, LEWIS_MAX_ITERS, LEWIS_TOL, RANK_TOL
from ..errors import ContractError, InputDataError

logger = logging.getLogger(__name__)


@dataclass
class RealMatrix:
    """
    Linhas (n, d) com escalas por linha.

    A matriz representada é diag(scales) @ rows; as escalas são (1/q)^(1/p)
    acumuladas pela amostragem.
    """

    rows: np.ndarray
    scales: Optional[np.ndarray] = None

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim == 1:
            self.rows = self.rows.reshape(1, -1)
        if self.scales is None:
            self.scales = np.ones(self.rows.shape[0])
        self.scales = np.asarray(self.scales, dtype=float).reshape(-1)
        if self.scales.shape[0] != self.rows.shape[0]:
            raise ContractError("número de escalas difere do de linhas")
        if self.scales.size and np.any(self.scales <= 0):
            raise ContractError("escalas devem ser positivas")

    @classmethod
    def from_rows(cls, rows, entry_bound: Optional[float] = None) -> "RealMatrix":
        """
        Ingestão de linhas inteiras com |entrada| <= M.

        Raises:
            InputDataError: Entrada não inteira ou acima do limite
        """
        rows = np.asarray(rows, dtype=float)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if not np.all(np.isfinite(rows)) or np.any(rows != np.rint(rows)):
            raise InputDataError("entradas da matriz devem ser inteiras")
        if entry_bound is not None and rows.size and np.max(np.abs(rows)) > entry_bound:
            raise InputDataError(f"entrada acima do limite M={entry_bound:g}")
        return cls(rows)

    @classmethod
    def empty(cls, d: int) -> "RealMatrix":
        return cls(np.zeros((0, d)), np.zeros(0))

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    @property
    def d(self) -> int:
        return int(self.rows.shape[1])

    def scaled(self) -> np.ndarray:
        return self.rows * self.scales[:, None]

    def subset(self, indices) -> "RealMatrix":
        return RealMatrix(self.rows[indices], self.scales[indices])

    def union(self, *others: "RealMatrix") -> "RealMatrix":
        parts = [m for m in (self,) + others if len(m)]
        if not parts:
            return RealMatrix.empty(self.d)
        if len({m.d for m in parts}) > 1:
            raise ContractError("dimensões diferentes na união de linhas")
        return RealMatrix(np.vstack([m.rows for m in parts]), np.concatenate([m.scales for m in parts]))

    def norm_p(self, x: np.ndarray, p: float) -> float:
        """||A x||_p^p da matriz representada."""
        return float(np.sum(np.abs(self.scaled() @ np.asarray(x, dtype=float)) ** p))


MatrixLike = Union[RealMatrix, np.ndarray]


def as_array(A: MatrixLike) -> np.ndarray:
    if isinstance(A, RealMatrix):
        return A.scaled()
    A = np.asarray(A, dtype=float)
    return A.reshape(1, -1) if A.ndim == 1 else A


def matrix_rank(A: MatrixLike, tol: float = RANK_TOL) -> int:
    A = as_array(A)
    if A.size == 0:
        return 0
    s = linalg.svd(A, compute_uv=False)
    return int(np.count_nonzero(s > tol * s[0])) if s[0] > 0 else 0


def leverage_scores(A: MatrixLike, tol: float = RANK_TOL) -> np.ndarray:
    """
    Leverage scores a_i^T (A^T A)^+ a_i pelas linhas de U da SVD reduzida.

    Args:
        A: Matriz (n, d)
        tol: Tolerância relativa de posto

    Returns:
        Array (n,) com valores em [0, 1] e soma igual ao posto
    """
    A = as_array(A)
    if A.shape[0] == 0:
        return np.zeros(0)
    U, s, _ = linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros(A.shape[0])
    rank = int(np.count_nonzero(s > tol * s[0]))
    return np.clip(np.sum(U[:, :rank] ** 2, axis=1), 0.0, 1.0)


@dataclass
class LewisState:
    """Pesos de Lewis com o resíduo do ponto fixo medido pela definição."""

    weights: np.ndarray
    p: float
    residual: float
    iterations: int
    converged: bool


def _quadratic_forms(A: np.ndarray, scaling: np.ndarray) -> np.ndarray:
    """tau_i = a_i^T (A^T diag(scaling) A)^+ a_i."""
    gram = A.T @ (A * scaling[:, None])
    inverse = linalg.pinvh(gram)
    return np.einsum("ij,jk,ik->i", A, inverse, A)


def lewis_residual(A: MatrixLike, weights: np.ndarray, p: float) -> float:
    """
    max_i |w_i - l_i(W^(1/2-1/p) A)| / w_i sobre as linhas não nulas.
    """
    A = as_array(A)
    weights = np.asarray(weights, dtype=float)
    active = np.any(A != 0, axis=1) & (weights > 0)
    if not active.any():
        return 0.0
    B = A[active] * (weights[active] ** (0.5 - 1.0 / p))[:, None]
    lev = leverage_scores(B)
    return float(np.max(np.abs(weights[active] - lev) / weights[active]))


def lewis_weights(A: MatrixLike, p: float, tol: float = LEWIS_TOL, max_iters: int = LEWIS_MAX_ITERS,
                  damping: float = LEWIS_DAMPING) -> LewisState:
    """
    Pesos de Lewis por iteração de ponto fixo a partir de w = 1.

    Usa a forma w_i <- (a_i^T (A^T W^(1-2/p) A)^+ a_i)^(p/2), cujo ponto fixo é
    a definição w_i = l_i(W^(1/2-1/p) A). Para p >= 4 aplica amortecimento
    w <- w^(1-theta) * atualização^theta. Linhas nulas recebem peso 0.

    Args:
        A: Matriz (n, d)
        p: Expoente (>= 1)
        tol: Tolerância do resíduo relativo
        max_iters: Limite de iterações
        damping: theta usado quando p >= 4

    Returns:
        LewisState; converged=False se o limite de iterações foi atingido
    """
    if p < 1:
        raise ContractError(f"p deve ser >= 1: {p}")
    A = as_array(A)
    n = A.shape[0]
    if n == 0:
        return LewisState(np.zeros(0), p, 0.0, 0, True)
    if p == 2:
        weights = leverage_scores(A)
        return LewisState(weights, p, lewis_residual(A, weights, p), 1, True)

    active = np.any(A != 0, axis=1)
    weights = np.zeros(n)
    if not active.any():
        return LewisState(weights, p, 0.0, 0, True)
    rows = A[active]
    w = np.ones(rows.shape[0])
    theta = damping if p >= 4 else 1.0
    residual = math.inf
    iteration = 0
    for iteration in range(1, max_iters + 1):
        tau = np.maximum(_quadratic_forms(rows, w ** (1.0 - 2.0 / p)), 0.0)
        update = tau ** (p / 2.0)
        # Resíduo pela definição: l_i = w_i^(1-2/p) tau_i
        with np.errstate(divide="ignore", invalid="ignore"):
            residual = float(np.max(np.abs(1.0 - w ** (-2.0 / p) * tau)))
        if residual < tol:
            break
        w = w ** (1.0 - theta) * update ** theta
        # Linhas fora do posto efetivo não deixam a iteração
        w = np.maximum(w, np.finfo(float).tiny)
    weights[active] = w
    converged = residual < tol
    if not converged:
        logger.warning(f"Pesos de Lewis (p={p}) não convergiram em {max_iters} iterações; "
                       f"resíduo {residual:.3g}")
    return LewisState(weights, p, residual, iteration, converged)
