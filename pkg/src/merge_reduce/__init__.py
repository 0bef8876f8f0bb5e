"""
Árvore merge-and-reduce sobre resumos codificados.
"""

from .base_codec import BaseSummaryCodec
from .clustering_codec import ClusteringCodec, reduce_coreset, reduce_target_size
from .state import MergeReduceState, mr_insert, mr_query

__all__ = [
    'BaseSummaryCodec',
    'ClusteringCodec',
    'reduce_coreset',
    'reduce_target_size',
    'MergeReduceState',
    'mr_insert',
    'mr_query'
]
