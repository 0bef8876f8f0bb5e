"""
Avaliação de coresets e embeddings e gráficos.
"""

from .evaluation import (
    random_center_sets,
    local_search_center_sets,
    relative_cost_errors,
    evaluate_clustering,
    spectral_sandwich,
    direction_ratio_extremes,
    evaluate_embedding
)
from .plots import coreset_scatter, bench_plot, save_figure

__all__ = [
    'random_center_sets',
    'local_search_center_sets',
    'relative_cost_errors',
    'evaluate_clustering',
    'spectral_sandwich',
    'direction_ratio_extremes',
    'evaluate_embedding',
    'coreset_scatter',
    'bench_plot',
    'save_figure'
]
