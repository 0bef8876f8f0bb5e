"""
Codec de resumo para (k, z)-clustering: conjuntos ponderados codificados em KZC1.
"""
import logging
import math
import struct
from typing import Optional, Sequence, Tuple

import numpy as np

from .base_codec import BaseSummaryCodec
from ..config import DEFAULT_N_BOUND, REDUCE_MIN_SIZE_FACTOR, REDUCE_SIZE_CONSTANT
from ..encoding import coreset_codec
from ..errors import ContractError, FormatError
from ..geometry.types import CenterSet, Dataset
from ..sensitivity.base_estimator import estimate_values
from ..sensitivity.batch_sens import batch_sens_with_solution
from ..solvers.local_search import local_search_medoids

logger = logging.getLogger(__name__)

_COUNT = struct.Struct("<Q")
_ROWS = struct.Struct("<I")


def reduce_target_size(k: int, d: int, epsilon: float, fail_prob: float,
                       constant: float = REDUCE_SIZE_CONSTANT) -> int:
    """
    m = C * (k / eps^2) * (d + log(1/delta)) * log k, nunca abaixo de 4k.
    """
    raw = constant * (k / epsilon ** 2) * (d + math.log(1.0 / fail_prob)) * max(math.log(k), 1.0)
    return max(REDUCE_MIN_SIZE_FACTOR * k, int(math.ceil(raw)))


def reduce_coreset(X: Dataset, k: int, z: float, epsilon: float, fail_prob: float,
                   rng: np.random.Generator, target: Optional[int] = None) -> Dataset:
    """
    Reduz X por amostragem de sensibilidade.

    Amostra m pontos i.i.d. com probabilidade proporcional à sensibilidade
    (BatchSens sobre o suporte de X) e peso w / (m q); repetições são fundidas.

    Args:
        X: Conjunto ponderado
        k: Número de centros
        z: Expoente
        epsilon: Precisão do nível
        fail_prob: Probabilidade de falha do nível
        rng: Gerador do subfluxo
        target: Tamanho alvo (padrão reduce_target_size)

    Returns:
        Conjunto reduzido; X inalterado se já cabe no alvo
    """
    if not 0 < epsilon < 1 or not 0 < fail_prob < 1:
        raise ContractError(f"precisão/falha inválidas: {epsilon}, {fail_prob}")
    if len(X) == 0:
        return X
    m = target or reduce_target_size(k, X.d, epsilon, fail_prob)
    if len(X) <= m:
        return X
    support, mass, _ = X.support()
    if support.shape[0] <= m:
        # Colapsar duplicatas já basta
        return Dataset(support, mass, X.delta)

    U = Dataset(support, mass, X.delta)
    estimates, _ = batch_sens_with_solution(Dataset.empty(X.d, X.delta), U, k, z, rng)
    sens = estimate_values(estimates)
    q = sens / sens.sum()
    draws = rng.choice(support.shape[0], size=m, replace=True, p=q)
    counts = np.bincount(draws, minlength=support.shape[0])
    chosen = np.flatnonzero(counts)
    weights = mass[chosen] * counts[chosen] / (m * q[chosen])
    logger.debug(f"reduce_coreset: {len(X)} -> {chosen.size} pontos (alvo {m})")
    return Dataset(support[chosen], weights, X.delta)


class ClusteringCodec(BaseSummaryCodec):
    """
    Resumos de clustering: Dataset decodificado, EncodedCoreset em KZC1.
    """

    name = "clustering"

    def __init__(self, d: int, k: int, z: float, epsilon: float, fail_prob: float,
                 eps_prime: float, n_bound: int = DEFAULT_N_BOUND, delta: Optional[int] = None,
                 target: Optional[int] = None, name: str = "clustering"):
        super().__init__(d)
        self.name = name
        self.k = int(k)
        self.z = float(z)
        self.epsilon = float(epsilon)
        self.fail_prob = float(fail_prob)
        self.eps_prime = float(eps_prime)
        self.n_bound = int(n_bound)
        self.delta = delta
        self.target = int(target or reduce_target_size(self.k, self.d, self.epsilon, self.fail_prob))

    def empty(self) -> Dataset:
        return Dataset.empty(self.d, self.delta)

    def size(self, summary: Dataset) -> int:
        return len(summary)

    def union(self, parts: Sequence[Dataset]) -> Dataset:
        return self.empty().union(*parts)

    def split(self, summary: Dataset, count: int) -> Tuple[Dataset, Dataset]:
        return summary.subset(slice(0, count)), summary.subset(slice(count, None))

    def reduce(self, summary: Dataset, rng: np.random.Generator) -> Dataset:
        return reduce_coreset(summary, self.k, self.z, self.epsilon, self.fail_prob, rng, self.target)

    def compute_anchors(self, summary: Dataset, rng: np.random.Generator) -> Optional[CenterSet]:
        if len(summary) == 0:
            return None
        return local_search_medoids(summary, self.k, self.z, rng)

    def encode(self, summary: Dataset, anchors: CenterSet) -> coreset_codec.EncodedCoreset:
        return coreset_codec.encode(summary, anchors, self.eps_prime, self.n_bound, self.delta)

    def decode(self, encoded: coreset_codec.EncodedCoreset) -> Dataset:
        return coreset_codec.decode(encoded)

    def serialize(self, encoded: coreset_codec.EncodedCoreset) -> bytes:
        return coreset_codec.serialize(encoded)

    def deserialize(self, payload: bytes) -> coreset_codec.EncodedCoreset:
        return coreset_codec.deserialize(payload, self.delta)

    def record_bytes(self, encoded: coreset_codec.EncodedCoreset) -> int:
        return len(encoded) * coreset_codec.record_dtype(encoded.d).itemsize

    def overhead_bytes(self, encoded: coreset_codec.EncodedCoreset) -> int:
        return coreset_codec.HEADER_BYTES + 8 * encoded.k * encoded.d

    def buffer_bytes(self, summary: Dataset) -> int:
        return _COUNT.size + 8 * len(summary) * (self.d + 1)

    def serialize_buffer(self, summary: Dataset) -> bytes:
        points = np.ascontiguousarray(summary.points, dtype="<f8").tobytes()
        weights = np.ascontiguousarray(summary.weights, dtype="<f8").tobytes()
        return _COUNT.pack(len(summary)) + points + weights

    def deserialize_buffer(self, payload: bytes) -> Dataset:
        if len(payload) < _COUNT.size:
            raise FormatError("buffer truncado")
        (n,) = _COUNT.unpack_from(payload, 0)
        expected = _COUNT.size + 8 * n * (self.d + 1)
        if len(payload) != expected:
            raise FormatError(f"buffer com {len(payload)} bytes; esperado {expected}")
        points = np.frombuffer(payload, dtype="<f8", count=n * self.d, offset=_COUNT.size)
        weights = np.frombuffer(payload, dtype="<f8", count=n, offset=_COUNT.size + 8 * n * self.d)
        return Dataset(points.reshape(n, self.d).copy(), weights.copy(), self.delta)

    def serialize_anchors(self, anchors: Optional[CenterSet]) -> bytes:
        if anchors is None:
            return _ROWS.pack(0)
        return _ROWS.pack(len(anchors)) + np.ascontiguousarray(anchors.centers, dtype="<f8").tobytes()

    def deserialize_anchors(self, payload: bytes) -> Optional[CenterSet]:
        (rows,) = _ROWS.unpack_from(payload, 0)
        if rows == 0:
            return None
        if len(payload) != _ROWS.size + 8 * rows * self.d:
            raise FormatError("âncoras do estado truncadas")
        data = np.frombuffer(payload, dtype="<f8", offset=_ROWS.size).reshape(rows, self.d)
        return CenterSet(data.copy())
