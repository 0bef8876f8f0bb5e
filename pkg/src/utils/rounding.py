"""
Arredondamento para potências de (1+eps') usado pelas duas codificações.
"""
import math
from typing import Tuple

import numpy as np

from ..config import I16_EXPONENT_CAP
from ..errors import ContractError


def exponent_limit(eps_prime: float, magnitude_bound: float, cap: int = I16_EXPONENT_CAP) -> int:
    """
    Calcula E_max = ceil(log_{1+eps'}(bound)), limitado por `cap`.

    Args:
        eps_prime: Passo relativo eps'
        magnitude_bound: Maior magnitude representável
        cap: Teto do campo de expoente

    Returns:
        Limite simétrico do expoente
    """
    if not 0.0 < eps_prime < 1.0:
        raise ContractError(f"eps' deve estar em (0,1): {eps_prime}")
    bound = max(float(magnitude_bound), 1.0 + eps_prime)
    return int(min(math.ceil(math.log(bound) / math.log1p(eps_prime)), cap))


def min_eps_prime_for_cap(magnitude_bound: float, cap: int = I16_EXPONENT_CAP) -> float:
    """Menor eps' cujo E_max cabe em `cap`."""
    bound = max(float(magnitude_bound), 2.0)
    return math.expm1(math.log(bound) / cap)


def round_to_powers(values: np.ndarray, eps_prime: float, limit: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Arredonda cada valor para sinal * (1+eps')^e, com e inteiro em [-limit, limit].

    O expoente é o mais próximo em escala logarítmica, logo a razão entre o
    valor decodificado e o original fica em [(1+eps')^-1/2, (1+eps')^1/2].
    Magnitudes abaixo de (1+eps')^-limit viram o sentinela zero.

    Args:
        values: Array de valores reais
        eps_prime: Passo relativo
        limit: Limite do expoente

    Returns:
        Tupla (sinais int8 em {-1,0,1}, expoentes int64)
    """
    values = np.asarray(values, dtype=float)
    signs = np.sign(values).astype(np.int8)
    magnitudes = np.abs(values)
    exponents = np.zeros(values.shape, dtype=np.int64)
    nonzero = magnitudes > 0
    if np.any(nonzero):
        raw = np.rint(np.log(magnitudes[nonzero]) / math.log1p(eps_prime)).astype(np.int64)
        exponents[nonzero] = raw
    # Abaixo do menor expoente: sentinela zero
    underflow = nonzero & (exponents < -limit)
    signs[underflow] = 0
    exponents[signs == 0] = 0
    np.clip(exponents, -limit, limit, out=exponents)
    return signs, exponents


def powers_to_values(signs: np.ndarray, exponents: np.ndarray, eps_prime: float) -> np.ndarray:
    """Inverso de round_to_powers."""
    signs = np.asarray(signs, dtype=float)
    exponents = np.asarray(exponents, dtype=float)
    return signs * np.exp(exponents * math.log1p(eps_prime))
