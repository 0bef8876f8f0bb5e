"""
Comparação entre sensibilidade de medoids e sensibilidade com centros contínuos.
"""
from dataclasses import dataclass

from ..config import GRID_RESOLUTION_DEFAULT
from ..geometry.types import Dataset
from ..oracle.medoids import exact_medoids_sensitivity, grid_clustering_sensitivity


@dataclass(frozen=True)
class GapReport:
    tau: float  # sensibilidade de medoids
    s_grid: float  # sensibilidade de clustering na grade
    ratio: float  # s_grid / tau
    spacing: float

    def within_envelope(self, z: float, slack: float = 0.0) -> bool:
        """tau <= s_grid (1 + slack) e s_grid <= 2^(z+1) * 101 * tau."""
        return (self.tau <= self.s_grid * (1.0 + slack)
                and self.s_grid <= 2.0 ** (z + 1) * 101.0 * self.tau)


def medoids_vs_clustering_gap(X: Dataset, x: int, k: int, z: float,
                              resolution: int = GRID_RESOLUTION_DEFAULT) -> GapReport:
    """
    Calcula tau(x) por enumeração e s(x) pela grade, com a razão entre eles.

    Args:
        X: Conjunto em escala de oráculo
        x: Índice consultado
        k: Tamanho máximo de C
        z: Expoente
        resolution: Passos da grade por eixo

    Returns:
        GapReport
    """
    tau = exact_medoids_sensitivity(X, x, k, z)
    grid = grid_clustering_sensitivity(X, x, k, z, resolution)
    return GapReport(tau, grid.value, grid.value / tau, grid.spacing)
