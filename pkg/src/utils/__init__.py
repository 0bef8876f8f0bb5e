"""
Utilidades compartilhadas: geradores determinísticos, arredondamento em potências e estatísticas.
"""

from .rng import derive_rng
from .rounding import exponent_limit, min_eps_prime_for_cap, round_to_powers, powers_to_values
from .streaming_stats import StreamingStat

__all__ = [
    'derive_rng',
    'exponent_limit',
    'min_eps_prime_for_cap',
    'round_to_powers',
    'powers_to_values',
    'StreamingStat'
]
