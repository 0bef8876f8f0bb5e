"""
Leitores de entrada (CSV, XLSX, SCKZ) e gravadores de artefatos.
"""
import logging
from typing import List, Type

from .base_loader import BaseLoader, WEIGHT_COLUMN, coordinate_columns
from .table_loader import TableLoader
from .binary_loader import BinaryLoader, decode_sckz, encode_sckz
from .writers import metrics_json, write_bytes, write_centers_csv, write_metrics_json, write_points_csv, write_sckz
from ..errors import InputDataError

logger = logging.getLogger(__name__)

LOADERS: List[Type[BaseLoader]] = [BinaryLoader, TableLoader]


def select_loader(path: str, weighted: bool = False) -> BaseLoader:
    """
    Escolhe o primeiro leitor capaz de processar o arquivo.

    Raises:
        FileNotFoundError: Arquivo inexistente
        InputDataError: Nenhum leitor reconhece o formato
    """
    for loader_cls in LOADERS:
        loader = loader_cls(path, weighted)
        if loader.can_process():
            logger.debug(f"{path}: usando {loader_cls.__name__}")
            return loader
    raise InputDataError(f"formato de entrada não reconhecido: {path}")


__all__ = [
    'BaseLoader',
    'TableLoader',
    'BinaryLoader',
    'LOADERS',
    'WEIGHT_COLUMN',
    'coordinate_columns',
    'select_loader',
    'encode_sckz',
    'decode_sckz',
    'write_bytes',
    'write_sckz',
    'write_points_csv',
    'write_centers_csv',
    'metrics_json',
    'write_metrics_json'
]
