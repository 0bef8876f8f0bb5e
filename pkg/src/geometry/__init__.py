"""
Geometria básica: tipos, distâncias e custo de clustering.
"""

from .types import validate_grid_point, WeightedPoint, Dataset, CenterSet, ClusteringParams
from .metrics import (
    dist,
    center_distances,
    assign_nearest,
    clustering_cost,
    point_costs,
    grid_diameter,
    prepare_swap_bookkeeping
)

__all__ = [
    'validate_grid_point',
    'WeightedPoint',
    'Dataset',
    'CenterSet',
    'ClusteringParams',
    'dist',
    'center_distances',
    'assign_nearest',
    'clustering_cost',
    'point_costs',
    'grid_diameter',
    'prepare_swap_bookkeeping'
]
