"""
Estimativa de sensibilidade em lote e amostragem online.
"""

from .base_estimator import (
    Quality,
    SensitivityEstimate,
    BaseSensitivityEstimator,
    make_estimate,
    estimate_values,
    coincident_share
)
from .batch_sens import batch_sens, batch_sens_with_solution, batch_claimed_factor, BatchSensEstimator
from .gap import GapReport, medoids_vs_clustering_gap
from .sampler import OnlineSensitivitySampler, online_sens_sampler, default_lambda

__all__ = [
    'Quality',
    'SensitivityEstimate',
    'BaseSensitivityEstimator',
    'make_estimate',
    'estimate_values',
    'coincident_share',
    'batch_sens',
    'batch_sens_with_solution',
    'batch_claimed_factor',
    'BatchSensEstimator',
    'GapReport',
    'medoids_vs_clustering_gap',
    'OnlineSensitivitySampler',
    'online_sens_sampler',
    'default_lambda'
]
