"""
Subspace embeddings Lp: leverage, pesos de Lewis, precondicionamento, codificação e pipeline.
"""

from .lewis import RealMatrix, LewisState, matrix_rank, leverage_scores, lewis_weights, lewis_residual
from .precondition import ConditionReport, measure_conditioning, precondition
from .crude_sketch import (
    CrudeLeverageSketch,
    crude_leverage_sketch,
    crude_lp_sensitivity,
    lp_sensitivity_upper_bound,
    root_score_bounds
)
from .row_codec import (
    EncodedRowSet,
    RowAnchors,
    RowCodec,
    encode_rows,
    decode_rows,
    serialize_rows,
    deserialize_rows,
    reduce_rows,
    row_target_size
)
from .sampler import BaseRowEstimator, LewisRowEstimator, CrudeRowEstimator, OnlineLewisSampler, online_lewis_sampler
from .embedding_pipeline import EmbeddingConfig, EmbeddingPipeline, stream_embed_update

__all__ = [
    'RealMatrix',
    'LewisState',
    'matrix_rank',
    'leverage_scores',
    'lewis_weights',
    'lewis_residual',
    'ConditionReport',
    'measure_conditioning',
    'precondition',
    'CrudeLeverageSketch',
    'crude_leverage_sketch',
    'crude_lp_sensitivity',
    'lp_sensitivity_upper_bound',
    'root_score_bounds',
    'EncodedRowSet',
    'RowAnchors',
    'RowCodec',
    'encode_rows',
    'decode_rows',
    'serialize_rows',
    'deserialize_rows',
    'reduce_rows',
    'row_target_size',
    'BaseRowEstimator',
    'LewisRowEstimator',
    'CrudeRowEstimator',
    'OnlineLewisSampler',
    'online_lewis_sampler',
    'EmbeddingConfig',
    'EmbeddingPipeline',
    'stream_embed_update'
]
