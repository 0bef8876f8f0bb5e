"""
Pipeline de clustering em streaming: configuração, projeção JL e filtro em dois estágios.
"""

from .settings import PipelineConfig
from .jl import JLProjection, jl_project
from .two_stage_filter import TwoStageFilter
from .clustering_pipeline import (
    ClusteringPipeline,
    stream_update,
    config_for_dataset,
    offline_cluster
)

__all__ = [
    'PipelineConfig',
    'JLProjection',
    'jl_project',
    'TwoStageFilter',
    'ClusteringPipeline',
    'stream_update',
    'config_for_dataset',
    'offline_cluster'
]
