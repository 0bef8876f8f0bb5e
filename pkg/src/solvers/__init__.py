"""
Solucionadores de (k, z)-medoids: busca local, semeadura adaptativa, solução rápida e custo com centro fixo.
"""

from .constrained import SwapCandidate, ConstrainedBatch, constrained_costs, constrained_with_center, NEW_POINT
from .seeding import adaptive_sampling_seed, adaptive_seed_indices, exact_distance
from .local_search import local_search_medoids, default_max_iters
from .fast_approx import fast_kz_approx

__all__ = [
    'SwapCandidate',
    'ConstrainedBatch',
    'constrained_costs',
    'constrained_with_center',
    'NEW_POINT',
    'adaptive_sampling_seed',
    'adaptive_seed_indices',
    'exact_distance',
    'local_search_medoids',
    'default_max_iters',
    'fast_kz_approx'
]
