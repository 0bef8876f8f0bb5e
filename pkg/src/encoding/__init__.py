"""
Codificação eficiente de coresets (formato KZC1).
"""

from .coreset_codec import (
    EncodedCoreset,
    BitReport,
    eps_prime_schedule,
    offset_magnitude_bound,
    weight_magnitude_bound,
    record_dtype,
    encode,
    decode,
    encode_against_global,
    serialize,
    deserialize,
    measure_bits
)

__all__ = [
    'EncodedCoreset',
    'BitReport',
    'eps_prime_schedule',
    'offset_magnitude_bound',
    'weight_magnitude_bound',
    'record_dtype',
    'encode',
    'decode',
    'encode_against_global',
    'serialize',
    'deserialize',
    'measure_bits'
]
