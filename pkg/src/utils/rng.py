"""
Geração de números aleatórios determinística com chaveamento hierárquico.

Toda a aleatoriedade vem de uma única semente; cada subfluxo é derivado por
(módulo, nó, passo) sobre um gerador baseado em contador (Philox).
"""
import zlib
from typing import Union

import numpy as np

Key = Union[int, str]


def _key_to_int(key: Key) -> int:
    # Strings viram inteiros estáveis entre execuções
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    return int(key) & 0xFFFFFFFFFFFFFFFF


def derive_rng(seed: int, *keys: Key) -> np.random.Generator:
    """
    Deriva um gerador independente para o subfluxo identificado por `keys`.

    Args:
        seed: Semente global de 64 bits
        *keys: Chaves hierárquicas (nome do módulo, id do nó, passo)

    Returns:
        Gerador numpy baseado em Philox
    """
    sequence = np.random.SeedSequence(
        entropy=int(seed) & 0xFFFFFFFFFFFFFFFF,
        spawn_key=tuple(_key_to_int(k) for k in keys),
    )
    return np.random.Generator(np.random.Philox(sequence))
