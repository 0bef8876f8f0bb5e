"""
Codificação de conjuntos de linhas (LPE1) contra âncora e precondicionador,
redução por amostragem de Lewis e o codec de linhas da árvore merge-and-reduce.
"""
import logging
import math
import struct
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .crude_sketch import lp_sensitivity_upper_bound
from .lewis import RealMatrix, as_array, leverage_scores, lewis_weights
from .precondition import ConditionReport, precondition
from ..config import (
    ANCHOR_ROW_FACTOR,
    CONSTANT_EPSILON,
    DEFAULT_ENTRY_BOUND,
    I16_EXPONENT_CAP,
    I32_EXPONENT_CAP,
    ROW_SAMPLE_CONSTANT,
)
from ..errors import ContractError, FormatError
from ..merge_reduce.base_codec import BaseSummaryCodec
from ..utils.rounding import exponent_limit, min_eps_prime_for_cap, powers_to_values, round_to_powers

logger = logging.getLogger(__name__)

MAGIC = b"LPE1"
VERSION = 1
_HEADER = struct.Struct("<4sIIIdd")
_COUNT = struct.Struct("<Q")
_ROWS = struct.Struct("<I")
# Escalas (1/q)^(1/p) nunca passam deste valor
_SCALE_BOUND = 2.0 ** 31


def row_record_dtype(d: int) -> np.dtype:
    """d x (i8 sinal, i16 expoente) e i32 expoente da escala."""
    return np.dtype([("coords", [("sign", "i1"), ("exp", "<i2")], (d,)), ("sexp", "<i4")])


@dataclass
class EncodedRowSet:
    """Linhas da âncora, P e registros da imagem a P de cada linha."""

    anchor_rows: np.ndarray
    preconditioner: np.ndarray
    p: float
    eps_prime: float
    signs: np.ndarray
    exponents: np.ndarray
    scale_exponents: np.ndarray
    exponent_limit: int = I16_EXPONENT_CAP
    scale_limit: int = I32_EXPONENT_CAP

    def __len__(self) -> int:
        return int(self.signs.shape[0])

    @property
    def d(self) -> int:
        return int(self.preconditioner.shape[0])


def encode_rows(A: RealMatrix, anchor, P: np.ndarray, eps_prime: float, p: float,
                entry_bound: float = DEFAULT_ENTRY_BOUND) -> EncodedRowSet:
    """
    Arredonda cada entrada de a P para sinal e potência de (1+eps').

    Args:
        A: Linhas com escalas
        anchor: Linhas da âncora (guardadas em precisão total)
        P: Precondicionador d x d
        eps_prime: Passo relativo
        p: Expoente da norma
        entry_bound: M, limite das entradas

    Returns:
        EncodedRowSet
    """
    if not 0 < eps_prime < 1:
        raise ContractError(f"eps' deve estar em (0,1): {eps_prime}")
    P = np.asarray(P, dtype=float)
    d = P.shape[0]
    if len(A) and A.d != d:
        raise ContractError(f"dimensões diferentes: linhas {A.d}, precondicionador {d}")
    singular = linalg.svdvals(P)
    if singular.size == 0 or singular[-1] <= 0:
        raise ContractError("precondicionador singular")
    # Faixa simétrica: maior entrada de a P e o inverso da menor magnitude
    # que ainda importa para uma linha inteira não nula (||a P|| >= 1 / ||P^-1||)
    upper = math.sqrt(d) * float(entry_bound) * float(singular[0])
    lower_inverse = math.sqrt(d) / (float(singular[-1]) * eps_prime)
    bound = max(upper, lower_inverse, 2.0)
    floor = min_eps_prime_for_cap(bound)
    if eps_prime < floor:
        logger.warning(f"eps' {eps_prime:.3g} elevado para {floor:.3g} para caber no expoente i16")
        eps_prime = floor
    e_max = exponent_limit(eps_prime, bound)
    s_max = exponent_limit(eps_prime, _SCALE_BOUND, cap=I32_EXPONENT_CAP)
    signs, exps = round_to_powers(A.rows @ P, eps_prime, e_max)
    _, sexps = round_to_powers(A.scales, eps_prime, s_max)
    return EncodedRowSet(as_array(anchor).copy(), P.copy(), float(p), eps_prime,
                         signs.reshape(len(A), d), exps.reshape(len(A), d), sexps, e_max, s_max)


def decode_rows(E: EncodedRowSet) -> RealMatrix:
    """
    Reconstrói A' = B' P^-1 com as escalas decodificadas.

    Raises:
        FormatError: Registro com sinal inválido
    """
    if len(E) == 0:
        return RealMatrix.empty(E.d)
    if np.any(np.abs(E.signs) > 1) or np.any((E.signs == 0) & (E.exponents != 0)):
        raise FormatError("registro com sinal inválido ou sentinela zero corrompido")
    image = powers_to_values(E.signs, E.exponents, E.eps_prime)
    rows = linalg.solve(E.preconditioner.T, image.T).T
    scales = powers_to_values(np.ones(len(E)), E.scale_exponents, E.eps_prime)
    return RealMatrix(rows, scales)


def serialize_rows(E: EncodedRowSet) -> bytes:
    """
    Formato LPE1 (little-endian): magic, u32 versão, u32 d, u32 linhas da âncora,
    f64 p, f64 eps', âncora f64, P f64, registros.
    """
    header = _HEADER.pack(MAGIC, VERSION, E.d, E.anchor_rows.shape[0], E.p, E.eps_prime)
    records = np.zeros(len(E), dtype=row_record_dtype(E.d))
    records["coords"]["sign"] = E.signs
    records["coords"]["exp"] = E.exponents
    records["sexp"] = E.scale_exponents
    return (header + np.ascontiguousarray(E.anchor_rows, dtype="<f8").tobytes()
            + np.ascontiguousarray(E.preconditioner, dtype="<f8").tobytes() + records.tobytes())


def deserialize_rows(payload: bytes) -> EncodedRowSet:
    """Lê um payload LPE1; FormatError se malformado."""
    if len(payload) < _HEADER.size:
        raise FormatError("payload LPE1 truncado")
    magic, version, d, m, p, eps_prime = _HEADER.unpack_from(payload, 0)
    if magic != MAGIC:
        raise FormatError(f"magic inválido: {magic!r}")
    if version != VERSION:
        raise FormatError(f"versão LPE1 não suportada: {version}")
    offset = _HEADER.size
    fixed = 8 * (m * d + d * d)
    if len(payload) < offset + fixed:
        raise FormatError("âncora ou precondicionador truncados")
    anchor = np.frombuffer(payload, dtype="<f8", count=m * d, offset=offset).reshape(m, d).copy()
    offset += 8 * m * d
    P = np.frombuffer(payload, dtype="<f8", count=d * d, offset=offset).reshape(d, d).copy()
    offset += 8 * d * d
    dtype = row_record_dtype(d)
    if (len(payload) - offset) % dtype.itemsize:
        raise FormatError("registros truncados")
    records = np.frombuffer(payload, dtype=dtype, offset=offset)
    return EncodedRowSet(anchor, P, float(p), float(eps_prime),
                         records["coords"]["sign"].astype(np.int8),
                         records["coords"]["exp"].astype(np.int64),
                         records["sexp"].astype(np.int64))


def row_target_size(d: int, p: float, epsilon: float, fail_prob: float,
                    constant: float = ROW_SAMPLE_CONSTANT) -> int:
    """m = C * d^max(1, p/2) * log(d / delta) / eps^2, nunca abaixo de ANCHOR_ROW_FACTOR * d."""
    raw = constant * d ** max(1.0, p / 2.0) * math.log(max(d, 2) / fail_prob) / epsilon ** 2
    return max(ANCHOR_ROW_FACTOR * d, int(math.ceil(raw)))


def sampling_weights(A: RealMatrix, p: float) -> np.ndarray:
    """
    Pesos de Lewis (leverage para p = 2); se a iteração não converge, usa o
    limite superior pela raiz do leverage.
    """
    S = A.scaled()
    if p == 2:
        return leverage_scores(S)
    state = lewis_weights(S, p)
    if state.converged:
        return state.weights
    xi = np.sqrt(leverage_scores(S))
    return np.array([lp_sensitivity_upper_bound(x, p, len(A), A.d) for x in xi])


def reduce_rows(A: RealMatrix, p: float, epsilon: float, fail_prob: float, rng: np.random.Generator,
                target: Optional[int] = None) -> RealMatrix:
    """
    Amostragem de Bernoulli com q_i = min(1, m w_i / sum w) e escala (1/q_i)^(1/p).

    Args:
        A: Linhas com escalas
        p: Expoente
        epsilon: Precisão do nível
        fail_prob: Probabilidade de falha do nível
        rng: Gerador do subfluxo
        target: Tamanho alvo esperado (padrão row_target_size)

    Returns:
        Linhas amostradas; A inalterada se já cabe no alvo
    """
    m = target or row_target_size(A.d, p, epsilon, fail_prob)
    if len(A) <= m:
        return A
    w = sampling_weights(A, p)
    total = w.sum()
    if total <= 0:
        return RealMatrix.empty(A.d)
    q = np.minimum(1.0, m * w / total)
    keep = rng.random(len(A)) < q
    kept = A.subset(keep)
    kept.scales = kept.scales * (1.0 / q[keep]) ** (1.0 / p)
    logger.debug(f"reduce_rows: {len(A)} -> {len(kept)} linhas (alvo {m})")
    return kept


@dataclass
class RowAnchors:
    """Âncora de fator constante e precondicionador de uma geração."""

    rows: np.ndarray
    preconditioner: np.ndarray
    report: Optional[ConditionReport] = None


def anchor_target_size(d: int) -> int:
    return ANCHOR_ROW_FACTOR * d * max(1, int(math.ceil(math.log(max(d, 2)))))


def compute_row_anchors(A: RealMatrix, p: float, fail_prob: float, rng: np.random.Generator) -> RowAnchors:
    """Âncora por amostragem de Lewis com precisão constante, depois o precondicionador."""
    anchor = reduce_rows(A, p, CONSTANT_EPSILON, fail_prob, rng, target=anchor_target_size(A.d))
    rows = anchor.scaled()
    P, report = precondition(rows, p, rng)
    return RowAnchors(rows, P, report)


class RowCodec(BaseSummaryCodec):
    """
    Resumos do subespaço: RealMatrix decodificada, EncodedRowSet em LPE1.
    """

    name = "rows"

    def __init__(self, d: int, p: float, epsilon: float, fail_prob: float, eps_prime: float,
                 entry_bound: float = DEFAULT_ENTRY_BOUND, target: Optional[int] = None,
                 name: str = "rows"):
        super().__init__(d)
        self.name = name
        self.p = float(p)
        self.epsilon = float(epsilon)
        self.fail_prob = float(fail_prob)
        self.eps_prime = float(eps_prime)
        self.entry_bound = float(entry_bound)
        self.target = int(target or row_target_size(self.d, self.p, self.epsilon, self.fail_prob))

    def empty(self) -> RealMatrix:
        return RealMatrix.empty(self.d)

    def size(self, summary: RealMatrix) -> int:
        return len(summary)

    def union(self, parts: Sequence[RealMatrix]) -> RealMatrix:
        return self.empty().union(*parts)

    def split(self, summary: RealMatrix, count: int) -> Tuple[RealMatrix, RealMatrix]:
        return summary.subset(slice(0, count)), summary.subset(slice(count, None))

    def reduce(self, summary: RealMatrix, rng: np.random.Generator) -> RealMatrix:
        return reduce_rows(summary, self.p, self.epsilon, self.fail_prob, rng, self.target)

    def compute_anchors(self, summary: RealMatrix, rng: np.random.Generator) -> Optional[RowAnchors]:
        if len(summary) == 0 or not np.any(summary.rows):
            return None
        return compute_row_anchors(summary, self.p, self.fail_prob, rng)

    def encode(self, summary: RealMatrix, anchors: Optional[RowAnchors]) -> EncodedRowSet:
        if anchors is None:
            anchors = RowAnchors(np.zeros((0, self.d)), np.eye(self.d))
        return encode_rows(summary, anchors.rows, anchors.preconditioner, self.eps_prime, self.p,
                           self.entry_bound)

    def decode(self, encoded: EncodedRowSet) -> RealMatrix:
        return decode_rows(encoded)

    def serialize(self, encoded: EncodedRowSet) -> bytes:
        return serialize_rows(encoded)

    def deserialize(self, payload: bytes) -> EncodedRowSet:
        return deserialize_rows(payload)

    def record_bytes(self, encoded: EncodedRowSet) -> int:
        return len(encoded) * row_record_dtype(encoded.d).itemsize

    def overhead_bytes(self, encoded: EncodedRowSet) -> int:
        return _HEADER.size + 8 * (encoded.anchor_rows.size + encoded.preconditioner.size)

    def buffer_bytes(self, summary: RealMatrix) -> int:
        return _COUNT.size + 8 * len(summary) * (self.d + 1)

    def serialize_buffer(self, summary: RealMatrix) -> bytes:
        return (_COUNT.pack(len(summary)) + np.ascontiguousarray(summary.rows, dtype="<f8").tobytes()
                + np.ascontiguousarray(summary.scales, dtype="<f8").tobytes())

    def deserialize_buffer(self, payload: bytes) -> RealMatrix:
        if len(payload) < _COUNT.size:
            raise FormatError("buffer truncado")
        (n,) = _COUNT.unpack_from(payload, 0)
        if len(payload) != _COUNT.size + 8 * n * (self.d + 1):
            raise FormatError("buffer de linhas com tamanho inválido")
        rows = np.frombuffer(payload, dtype="<f8", count=n * self.d, offset=_COUNT.size)
        scales = np.frombuffer(payload, dtype="<f8", count=n, offset=_COUNT.size + 8 * n * self.d)
        return RealMatrix(rows.reshape(n, self.d).copy(), scales.copy())

    def serialize_anchors(self, anchors: Optional[RowAnchors]) -> bytes:
        if anchors is None:
            return _ROWS.pack(0)
        return (_ROWS.pack(anchors.rows.shape[0]) + np.ascontiguousarray(anchors.rows, dtype="<f8").tobytes()
                + np.ascontiguousarray(anchors.preconditioner, dtype="<f8").tobytes())

    def deserialize_anchors(self, payload: bytes) -> Optional[RowAnchors]:
        (m,) = _ROWS.unpack_from(payload, 0)
        if m == 0:
            return None
        if len(payload) != _ROWS.size + 8 * (m * self.d + self.d * self.d):
            raise FormatError("âncoras de linhas truncadas")
        rows = np.frombuffer(payload, dtype="<f8", count=m * self.d, offset=_ROWS.size)
        P = np.frombuffer(payload, dtype="<f8", count=self.d * self.d, offset=_ROWS.size + 8 * m * self.d)
        return RowAnchors(rows.reshape(m, self.d).copy(), P.reshape(self.d, self.d).copy())
