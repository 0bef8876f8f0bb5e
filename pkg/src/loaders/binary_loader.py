"""
Leitor e gravador do formato binário SCKZ.

Layout (little-endian): magic "SCKZ", u32 d, u64 n, n*d coordenadas i64 em ordem de linhas.
"""
import logging
import os
import struct

import numpy as np
import pandas as pd

from .base_loader import BaseLoader, coordinate_columns
from ..errors import FormatError, InputDataError

logger = logging.getLogger(__name__)

MAGIC = b"SCKZ"
_HEADER = struct.Struct("<4sIQ")


def encode_sckz(points) -> bytes:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise InputDataError("SCKZ exige uma matriz (n, d)")
    if np.any(points != np.rint(points)):
        raise InputDataError("SCKZ só guarda coordenadas inteiras")
    n, d = points.shape
    return _HEADER.pack(MAGIC, d, n) + np.ascontiguousarray(points, dtype="<i8").tobytes()


def decode_sckz(payload: bytes) -> np.ndarray:
    """
    Raises:
        FormatError: magic inválido ou tamanho incompatível
    """
    if len(payload) < _HEADER.size:
        raise FormatError("arquivo SCKZ truncado")
    magic, d, n = _HEADER.unpack_from(payload, 0)
    if magic != MAGIC:
        raise FormatError(f"magic inválido: {magic!r}")
    if len(payload) != _HEADER.size + 8 * n * d:
        raise FormatError(f"SCKZ com {len(payload)} bytes; esperado {_HEADER.size + 8 * n * d}")
    coords = np.frombuffer(payload, dtype="<i8", count=n * d, offset=_HEADER.size)
    return coords.reshape(n, d).astype(float)


class BinaryLoader(BaseLoader):
    """Leitor SCKZ (sem pesos)."""

    def can_process(self) -> bool:
        with open(self.path, 'rb') as f:
            return f.read(4) == MAGIC

    def load(self) -> pd.DataFrame:
        if self.weighted:
            raise InputDataError("o formato SCKZ não carrega pesos")
        with open(self.path, 'rb') as f:
            points = decode_sckz(f.read())
        logger.info(f"{os.path.basename(self.path)}: {points.shape[0]} pontos SCKZ (d={points.shape[1]})")
        return pd.DataFrame(points, columns=coordinate_columns(points.shape[1]))
