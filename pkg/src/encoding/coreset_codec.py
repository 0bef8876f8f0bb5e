"""
Codificação eficiente de coresets contra centros-âncora.

Cada ponto vira (id da âncora, sinal e expoente de (1+eps') por coordenada do
deslocamento, expoente do peso). As âncoras são guardadas em precisão total,
com coordenadas inteiras.
"""
import logging
import math
import struct
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from ..config import DEFAULT_N_BOUND, EPS_PRIME_CONSTANT, I16_EXPONENT_CAP, I32_EXPONENT_CAP
from ..errors import ContractError, FormatError
from ..geometry.metrics import assign_nearest
from ..geometry.types import CenterSet, Dataset
from ..utils.rounding import exponent_limit, min_eps_prime_for_cap, powers_to_values, round_to_powers

logger = logging.getLogger(__name__)

MAGIC = b"KZC1"
VERSION = 2
_HEADER = struct.Struct("<4sIIIdii")
HEADER_BYTES = _HEADER.size


def eps_prime_schedule(epsilon: float, z: float, k: int, d: int, n_bound: int, delta: float,
                       constant: float = EPS_PRIME_CONSTANT) -> float:
    """eps' = eps^max(z,2) / (c * k * (d + log2(n Delta)))."""
    return epsilon ** max(z, 2.0) / (constant * k * (d + math.log2(max(n_bound * delta, 2.0))))


def offset_magnitude_bound(d: int, delta: float, n_bound: int = DEFAULT_N_BOUND) -> float:
    """Maior deslocamento representável: sqrt(d) * Delta * n."""
    return math.sqrt(d) * float(delta) * max(int(n_bound), 2)


def weight_magnitude_bound(d: int, delta: float, n_bound: int = DEFAULT_N_BOUND) -> float:
    """Maior peso representável: (n d Delta)^2."""
    return (max(int(n_bound), 2) * d * float(delta)) ** 2


def record_dtype(d: int) -> np.dtype:
    """Layout de um registro: u32 âncora, d x (i8 sinal, i16 expoente), i32 expoente do peso."""
    return np.dtype([
        ("anchor", "<u4"),
        ("coords", [("sign", "i1"), ("exp", "<i2")], (d,)),
        ("wexp", "<i4"),
    ])


@dataclass
class EncodedCoreset:
    """Âncoras mais registros de deslocamento em forma colunar."""

    anchors: np.ndarray
    eps_prime: float
    anchor_ids: np.ndarray
    signs: np.ndarray
    exponents: np.ndarray
    weight_exponents: np.ndarray
    exponent_limit: int = I16_EXPONENT_CAP
    weight_limit: int = I32_EXPONENT_CAP
    delta: Optional[int] = None

    def __len__(self) -> int:
        return int(self.anchor_ids.shape[0])

    @property
    def d(self) -> int:
        return int(self.anchors.shape[1])

    @property
    def k(self) -> int:
        return int(self.anchors.shape[0])

    def records_equal(self, other: "EncodedCoreset") -> bool:
        return (np.array_equal(self.anchor_ids, other.anchor_ids)
                and np.array_equal(self.signs, other.signs)
                and np.array_equal(self.exponents, other.exponents)
                and np.array_equal(self.weight_exponents, other.weight_exponents))


@dataclass(frozen=True)
class BitReport:
    header_bits: int
    anchor_bits: int
    record_bits: int  # por registro, pela fórmula empacotada
    n_records: int
    total_bits: int
    serialized_record_bytes: int
    serialized_bytes: int


def _raw_anchors(anchors: Union[CenterSet, np.ndarray]) -> np.ndarray:
    return anchors.centers if isinstance(anchors, CenterSet) else np.asarray(anchors, dtype=float)


def _anchor_array(anchors: Union[CenterSet, np.ndarray]) -> np.ndarray:
    centers = _raw_anchors(anchors)
    centers = np.atleast_2d(centers)
    if centers.shape[0] == 0:
        raise ContractError("no centers")
    # Âncoras com coordenadas inteiras (serializadas como i64)
    return np.rint(centers)


def encode(X: Dataset, anchors: Union[CenterSet, np.ndarray], eps_prime: float,
           n_bound: int = DEFAULT_N_BOUND, delta: Optional[float] = None) -> EncodedCoreset:
    """
    Codifica X contra as âncoras.

    Args:
        X: Conjunto ponderado
        anchors: Centros-âncora (arredondados para inteiros)
        eps_prime: Passo relativo do arredondamento
        n_bound: Limite de n para a faixa de expoentes
        delta: Limite da grade (padrão X.delta ou a maior coordenada)

    Returns:
        EncodedCoreset
    """
    if len(X) == 0 and np.atleast_2d(_raw_anchors(anchors)).shape[0] == 0:
        # Coreset vazio sem âncoras: só o cabeçalho
        A = np.zeros((0, np.atleast_2d(_raw_anchors(anchors)).shape[1]))
    else:
        A = _anchor_array(anchors)
    if not 0 < eps_prime < 1:
        raise ContractError(f"eps' deve estar em (0,1): {eps_prime}")
    if len(X) and np.any(X.weights <= 0):
        raise ContractError("peso não positivo")
    if len(X) and X.d != A.shape[1]:
        raise ContractError(f"dimensões diferentes: dados {X.d}, âncoras {A.shape[1]}")
    d = A.shape[1]
    extent = [1.0]
    if A.size:
        extent.append(float(np.max(np.abs(A))))
    if len(X):
        extent.append(float(np.max(np.abs(X.points))))
    grid = float(delta or X.delta or max(extent))
    bound = offset_magnitude_bound(d, grid, n_bound)
    floor = min_eps_prime_for_cap(bound)
    if eps_prime < floor:
        logger.warning(f"eps' {eps_prime:.3g} elevado para {floor:.3g} para caber no expoente i16")
        eps_prime = floor
    e_max = exponent_limit(eps_prime, bound)
    w_max = exponent_limit(eps_prime, weight_magnitude_bound(d, grid, n_bound), cap=I32_EXPONENT_CAP)

    if len(X) == 0:
        return EncodedCoreset(A, eps_prime, np.zeros(0, dtype=np.int64), np.zeros((0, d), dtype=np.int8),
                              np.zeros((0, d), dtype=np.int64), np.zeros(0, dtype=np.int64), e_max, w_max, X.delta)
    ids = assign_nearest(X, CenterSet(A))
    signs, exps = round_to_powers(X.points - A[ids], eps_prime, e_max)
    _, wexps = round_to_powers(X.weights, eps_prime, w_max)
    return EncodedCoreset(A, eps_prime, ids, signs, exps, wexps, e_max, w_max, X.delta)


def decode(E: EncodedCoreset) -> Dataset:
    """
    Reconstrói o conjunto ponderado: âncora + deslocamentos decodificados.
    """
    n = len(E)
    if n == 0:
        return Dataset.empty(E.d, E.delta)
    if np.any(E.anchor_ids < 0) or np.any(E.anchor_ids >= E.k):
        raise FormatError("registro com id de âncora inválido")
    if np.any(np.abs(E.signs) > 1) or np.any((E.signs == 0) & (E.exponents != 0)):
        raise FormatError("registro com sinal inválido ou sentinela zero corrompido")
    points = E.anchors[E.anchor_ids] + powers_to_values(E.signs, E.exponents, E.eps_prime)
    weights = powers_to_values(np.ones(n), E.weight_exponents, E.eps_prime)
    return Dataset(points, weights, E.delta)


def encode_against_global(parts: Sequence[Dataset], anchors: Union[CenterSet, np.ndarray],
                          eps_prime: float, n_bound: int = DEFAULT_N_BOUND,
                          delta: Optional[float] = None) -> List[EncodedCoreset]:
    """Codifica cada parte contra as mesmas âncoras globais."""
    return [encode(part, anchors, eps_prime, n_bound, delta) for part in parts]


def serialize(E: EncodedCoreset) -> bytes:
    """
    Formato KZC1 (little-endian): magic, u32 versão, u32 d, u32 k, f64 eps',
    i32 E_max, i32 W_max, âncoras i64 por linha, depois os registros.
    """
    header = _HEADER.pack(MAGIC, VERSION, E.d, E.k, float(E.eps_prime),
                          int(E.exponent_limit), int(E.weight_limit))
    anchors = np.ascontiguousarray(E.anchors.astype("<i8")).tobytes()
    records = np.zeros(len(E), dtype=record_dtype(E.d))
    records["anchor"] = E.anchor_ids
    records["coords"]["sign"] = E.signs
    records["coords"]["exp"] = E.exponents
    records["wexp"] = E.weight_exponents
    return header + anchors + records.tobytes()


def deserialize(payload: bytes, delta: Optional[int] = None) -> EncodedCoreset:
    """
    Lê um payload KZC1, com os limites de expoente gravados no cabeçalho.

    Raises:
        FormatError: magic, versão, limites ou tamanho inválidos
    """
    if len(payload) < _HEADER.size:
        raise FormatError("payload KZC1 truncado")
    magic, version, d, k, eps_prime, e_max, w_max = _HEADER.unpack_from(payload, 0)
    if magic != MAGIC:
        raise FormatError(f"magic inválido: {magic!r}")
    if version != VERSION:
        raise FormatError(f"versão KZC1 não suportada: {version}")
    if not 0 < e_max <= I16_EXPONENT_CAP or not 0 < w_max <= I32_EXPONENT_CAP:
        raise FormatError(f"limites de expoente inválidos: {e_max}, {w_max}")
    offset = _HEADER.size
    anchor_bytes = 8 * k * d
    if len(payload) < offset + anchor_bytes:
        raise FormatError("âncoras truncadas")
    anchors = np.frombuffer(payload, dtype="<i8", count=k * d, offset=offset).reshape(k, d).astype(float)
    offset += anchor_bytes
    dtype = record_dtype(d)
    remaining = len(payload) - offset
    if remaining % dtype.itemsize:
        raise FormatError("registros truncados")
    records = np.frombuffer(payload, dtype=dtype, offset=offset)
    return EncodedCoreset(
        anchors, float(eps_prime),
        records["anchor"].astype(np.int64),
        records["coords"]["sign"].astype(np.int8),
        records["coords"]["exp"].astype(np.int64),
        records["wexp"].astype(np.int64),
        e_max, w_max, delta,
    )


def measure_bits(E: EncodedCoreset) -> BitReport:
    """
    Contagem de bits: cabeçalho, âncoras em precisão total e bits por registro
    ceil(log2 k) + d (2 + ceil(log2(2 E_max + 1))) + ceil(log2(2 W_max + 1)).
    """
    header_bits = 8 * _HEADER.size
    anchor_bits = 64 * E.k * E.d
    id_bits = int(math.ceil(math.log2(E.k))) if E.k > 1 else 0
    exp_bits = int(math.ceil(math.log2(2 * E.exponent_limit + 1)))
    weight_bits = int(math.ceil(math.log2(2 * E.weight_limit + 1)))
    record_bits = id_bits + E.d * (2 + exp_bits) + weight_bits
    itemsize = record_dtype(E.d).itemsize
    return BitReport(
        header_bits=header_bits,
        anchor_bits=anchor_bits,
        record_bits=record_bits,
        n_records=len(E),
        total_bits=header_bits + anchor_bits + len(E) * record_bits,
        serialized_record_bytes=itemsize,
        serialized_bytes=_HEADER.size + anchor_bits // 8 + len(E) * itemsize,
    )
