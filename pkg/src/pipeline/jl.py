"""
Projeção Johnson-Lindenstrauss gaussiana, sorteada uma vez por execução.
"""
import logging
import math
from typing import Optional

import numpy as np

from ..errors import ContractError

logger = logging.getLogger(__name__)


class JLProjection:
    """
    Mapa linear x -> x G / sqrt(m), com G gaussiana (d, m).

    Quando m >= d a projeção é dispensada e o mapa é a identidade.
    """

    def __init__(self, d: int, m: int, rng: Optional[np.random.Generator] = None):
        if d < 1 or m < 1:
            raise ContractError(f"dimensões inválidas para JL: d={d}, m={m}")
        self.d = int(d)
        self.m = int(m)
        self.matrix: Optional[np.ndarray] = None
        if m < d:
            rng = rng or np.random.default_rng(0)
            self.matrix = rng.standard_normal((d, m)) / math.sqrt(m)
            logger.debug(f"Projeção JL {d} -> {m}")

    @property
    def is_identity(self) -> bool:
        return self.matrix is None

    @property
    def out_dim(self) -> int:
        return self.d if self.matrix is None else self.m

    def project(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        single = points.ndim == 1
        points = points.reshape(-1, self.d)
        out = points.copy() if self.matrix is None else points @ self.matrix
        return out[0] if single else out


def jl_project(x, projection: JLProjection) -> np.ndarray:
    """Imagem de um ponto pela projeção fixa da execução."""
    return projection.project(np.asarray(x, dtype=float).reshape(-1))
