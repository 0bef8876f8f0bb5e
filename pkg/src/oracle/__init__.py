"""
Oráculos de força bruta para testes de fatores de aproximação.
"""

from .medoids import GridSensitivity, exact_medoids_opt, exact_medoids_sensitivity, grid_clustering_sensitivity
from .lp import LpSensitivity, exact_lp_sensitivity

__all__ = [
    'GridSensitivity',
    'exact_medoids_opt',
    'exact_medoids_sensitivity',
    'grid_clustering_sensitivity',
    'LpSensitivity',
    'exact_lp_sensitivity'
]
