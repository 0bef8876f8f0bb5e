"""
Gravação dos artefatos: SCKZ, payloads binários, centros em CSV e métricas em JSON.
"""
import json
import logging
import os
from typing import Any, Dict

import numpy as np
import pandas as pd

from .base_loader import coordinate_columns
from .binary_loader import encode_sckz
from ..config import METRICS_SCHEMA_VERSION

logger = logging.getLogger(__name__)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_bytes(path: str, payload: bytes) -> None:
    _ensure_parent(path)
    with open(path, 'wb') as f:
        f.write(payload)
    logger.info(f"Gravado {path} ({len(payload)} bytes)")


def write_sckz(path: str, points) -> None:
    write_bytes(path, encode_sckz(points))


def write_points_csv(path: str, points, weights=None) -> None:
    """CSV sem cabeçalho; inteiros quando os valores são inteiros."""
    points = np.asarray(points, dtype=float)
    frame = pd.DataFrame(points, columns=coordinate_columns(points.shape[1]))
    if np.all(points == np.rint(points)):
        frame = frame.astype(np.int64)
    if weights is not None:
        frame["weight"] = np.asarray(weights, dtype=float)
    _ensure_parent(path)
    frame.to_csv(path, header=False, index=False)
    logger.info(f"Gravado {path} ({len(frame)} linhas)")


def write_centers_csv(path: str, centers) -> None:
    """Centros com cabeçalho x0..x{d-1}."""
    centers = np.asarray(centers, dtype=float)
    frame = pd.DataFrame(centers, columns=coordinate_columns(centers.shape[1]))
    _ensure_parent(path)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Gravado {path} ({len(frame)} centros)")


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"valor não serializável: {type(value).__name__}")


def metrics_json(metrics: Dict[str, Any]) -> str:
    """JSON com chaves ordenadas e schema_version garantido."""
    payload = dict(metrics)
    payload.setdefault('schema_version', METRICS_SCHEMA_VERSION)
    return json.dumps(payload, sort_keys=True, indent=2, default=_jsonable) + "\n"


def write_metrics_json(path: str, metrics: Dict[str, Any]) -> None:
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(metrics_json(metrics))
    logger.info(f"Métricas gravadas em {path}")
