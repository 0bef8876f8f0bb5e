"""
Estimativas grosseiras de leverage por esboço gaussiano e transferência para sensibilidades Lp.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from .lewis import MatrixLike, as_array
from ..config import CRUDE_SKETCH_TRIALS, RANK_TOL

logger = logging.getLogger(__name__)


def lp_sensitivity_upper_bound(xi: float, p: float, n: int, d: int) -> float:
    """
    Limite superior da sensibilidade Lp a partir da raiz do leverage:
    min(1, d^(p/2) * xi^p * n^(|1/2 - 1/p| p)).
    """
    return float(min(1.0, d ** (p / 2.0) * xi ** p * max(n, 1) ** (abs(0.5 - 1.0 / p) * p)))


def root_score_bounds(xi: float, p: float, n: int) -> Tuple[float, float]:
    """
    Intervalo para s_p dado xi = sqrt(leverage).

    p <= 2: s^(1/p) <= xi <= n^(1/p-1/2) s^(1/p); p > 2: desigualdades invertidas.

    Returns:
        Tupla (limite inferior, limite superior) de s_p
    """
    spread = max(n, 1) ** abs(1.0 / p - 0.5)
    if p <= 2:
        return (xi / spread) ** p, xi ** p
    return xi ** p, (spread * xi) ** p


@dataclass
class CrudeLeverageSketch:
    """
    Z = (B^T B)^(-1/2) da âncora, vetores gaussianos por geração e a base do espaço das linhas.
    """

    root_inverse: np.ndarray
    gaussians: np.ndarray
    basis: Optional[np.ndarray] = None

    @classmethod
    def from_anchor(cls, B: MatrixLike, rng: np.random.Generator,
                    trials: int = CRUDE_SKETCH_TRIALS) -> "CrudeLeverageSketch":
        """
        Monta o esboço a partir de uma âncora de fator constante.

        Args:
            B: Linhas da âncora
            rng: Gerador da geração da âncora
            trials: Número de vetores gaussianos

        Returns:
            CrudeLeverageSketch
        """
        B = as_array(B)
        d = B.shape[1]
        eigvals, eigvecs = linalg.eigh(B.T @ B)
        top = eigvals[-1] if eigvals.size else 0.0
        keep = eigvals > RANK_TOL * max(top, 0.0)
        inv_root = np.zeros_like(eigvals)
        inv_root[keep] = 1.0 / np.sqrt(eigvals[keep])
        Z = (eigvecs * inv_root[None, :]) @ eigvecs.T
        return cls(Z, rng.standard_normal((trials, d)), eigvecs[:, keep])

    @property
    def trials(self) -> int:
        return int(self.gaussians.shape[0])

    def out_of_span(self, a: np.ndarray, tol: float = 1e-9) -> bool:
        """True se a tem componente relevante fora do espaço das linhas da âncora."""
        if self.basis is None:
            return False
        a = np.asarray(a, dtype=float).reshape(-1)
        norm = np.linalg.norm(a)
        if norm == 0:
            return False
        residual = a - self.basis @ (self.basis.T @ a)
        return bool(np.linalg.norm(residual) > tol * norm)


def crude_leverage_sketch(sketch: CrudeLeverageSketch, a) -> float:
    """
    Mediana sobre as tentativas de <g_i Z, a>^2.

    Args:
        sketch: Esboço da âncora
        a: Linha consultada

    Returns:
        Estimativa grosseira de a^T (B^T B)^-1 a
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    if not np.any(a):
        return 0.0
    values = (sketch.gaussians @ (sketch.root_inverse @ a)) ** 2
    return float(np.median(values))


def crude_lp_sensitivity(sketch: CrudeLeverageSketch, a, p: float, n: int) -> float:
    """
    Sensibilidade Lp grosseira de a contra a âncora acrescida de a.

    Linhas fora do espaço da âncora recebem 1.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    if not np.any(a):
        return 0.0
    if sketch.out_of_span(a):
        return 1.0
    q = crude_leverage_sketch(sketch, a)
    # leverage contra B ∪ {a}: q / (1 + q)
    xi = math.sqrt(q / (1.0 + q))
    return float(min(1.0, root_score_bounds(xi, p, n)[1]))
