"""
Árvore merge-and-reduce preguiçosa com nós codificados e âncoras globais.

Blocos cheios entram no nível 0; dois nós no mesmo nível são decodificados,
unidos, reduzidos e sobem um nível. A cada redução as âncoras globais são
recalculadas a partir do estado decodificado completo; cada nó guarda as
âncoras com que foi codificado, de modo que nós antigos continuam decodificáveis.
"""
import logging
import struct
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from .base_codec import BaseSummaryCodec
from ..config import H_MAX_DEFAULT
from ..errors import ContractError, FormatError
from ..utils.rng import derive_rng

logger = logging.getLogger(__name__)

MAGIC = b"MRST"
VERSION = 1
_HEADER = struct.Struct("<4sIIQIQQQ")
_LENGTH = struct.Struct("<Q")


@dataclass
class MergeReduceState:
    """
    Estado da árvore: buffer do nível 0, no máximo um nó por nível e âncoras globais.
    """

    codec: BaseSummaryCodec
    block_size: int
    seed: int = 0
    max_height: int = H_MAX_DEFAULT
    buckets: Dict[int, Any] = field(default_factory=dict)
    buffer: Any = None
    anchors: Any = None
    generation: int = 0
    reduce_count: int = 0
    inserted: int = 0
    peak_record_bytes: int = 0
    peak_overhead_bytes: int = 0

    def __post_init__(self):
        if self.block_size < 1:
            raise ContractError(f"block_size deve ser >= 1: {self.block_size}")
        if self.buffer is None:
            self.buffer = self.codec.empty()
        self._height_warned = False

    @property
    def height(self) -> int:
        return max(self.buckets) if self.buckets else 0

    @property
    def level_bitmap(self) -> int:
        bitmap = 0
        for level in self.buckets:
            bitmap |= 1 << level
        return bitmap

    def live_record_bytes(self) -> int:
        """Bytes vivos dos registros dos nós mais o buffer do nível 0."""
        total = sum(self.codec.record_bytes(b) for b in self.buckets.values())
        return total + self.codec.buffer_bytes(self.buffer)

    def live_overhead_bytes(self) -> int:
        """Bytes de cabeçalho e âncoras dos nós."""
        return sum(self.codec.overhead_bytes(b) for b in self.buckets.values())

    def _track_peak(self) -> None:
        self.peak_record_bytes = max(self.peak_record_bytes, self.live_record_bytes())
        self.peak_overhead_bytes = max(self.peak_overhead_bytes, self.live_overhead_bytes())

    def _refresh_anchors(self, carry: Any) -> None:
        rng = derive_rng(self.seed, "merge-reduce", self.codec.name, "anchors", self.generation)
        full = self.codec.union(self.codec.decode_all(list(self.buckets.values())) + [carry, self.buffer])
        anchors = self.codec.compute_anchors(full, rng)
        if anchors is not None:
            self.anchors = anchors
            self.generation += 1
            logger.debug(f"Âncoras globais ({self.codec.name}) na geração {self.generation}")

    def _carry(self, block: Any) -> None:
        """Insere um bloco cheio no nível 0 e propaga as fusões."""
        level = 0
        carry = block
        while level in self.buckets:
            merged = self.codec.union([self.codec.decode(self.buckets.pop(level)), carry])
            rng = derive_rng(self.seed, "merge-reduce", self.codec.name, "reduce", self.reduce_count)
            carry = self.codec.reduce(merged, rng)
            self.reduce_count += 1
            level += 1
            # Âncoras recalculadas a cada redução
            self._refresh_anchors(carry)
        if self.anchors is None:
            self._refresh_anchors(carry)
        if level > self.max_height and not self._height_warned:
            logger.warning(f"Altura {level} acima do limite configurado {self.max_height}; "
                           f"a precisão por nível deixa de cobrir a árvore inteira")
            self._height_warned = True
        self.buckets[level] = self.codec.encode(carry, self.anchors)
        if level > 0:
            logger.info(f"Merge-and-reduce ({self.codec.name}): nó no nível {level}, "
                        f"{self.reduce_count} reduções")

    def insert(self, items: Any) -> "MergeReduceState":
        """
        Acrescenta itens ao buffer e esvazia blocos cheios na árvore.

        Args:
            items: Resumo com um ou mais itens (pontos ou linhas)

        Returns:
            O próprio estado
        """
        count = self.codec.size(items)
        if count == 0:
            return self
        self.buffer = self.codec.union([self.buffer, items])
        self.inserted += count
        while self.codec.size(self.buffer) >= self.block_size:
            block, self.buffer = self.codec.split(self.buffer, self.block_size)
            self._carry(block)
        self._track_peak()
        return self

    def query(self) -> Any:
        """União decodificada de todos os nós (do mais alto ao mais baixo) e do buffer."""
        parts = [self.codec.decode(self.buckets[level]) for level in sorted(self.buckets, reverse=True)]
        return self.codec.union(parts + [self.buffer])

    def to_bytes(self) -> bytes:
        """
        Formato MRST: magic, u32 versão, u32 block_size, u64 bitmap de níveis,
        u32 d, u64 geração, u64 reduções, u64 inseridos; depois âncoras,
        buffer e os nós em ordem crescente de nível, cada um prefixado por u64.
        """
        out = [_HEADER.pack(MAGIC, VERSION, self.block_size, self.level_bitmap, self.codec.d,
                            self.generation, self.reduce_count, self.inserted)]
        for payload in [self.codec.serialize_anchors(self.anchors), self.codec.serialize_buffer(self.buffer)]:
            out.append(_LENGTH.pack(len(payload)) + payload)
        for level in sorted(self.buckets):
            payload = self.codec.serialize(self.buckets[level])
            out.append(_LENGTH.pack(len(payload)) + payload)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, payload: bytes, codec: BaseSummaryCodec, seed: int = 0,
                   max_height: int = H_MAX_DEFAULT) -> "MergeReduceState":
        state, offset = cls.read(payload, 0, codec, seed, max_height)
        if offset != len(payload):
            raise FormatError(f"{len(payload) - offset} bytes sobrando após o estado MRST")
        return state

    @classmethod
    def read(cls, payload: bytes, offset: int, codec: BaseSummaryCodec, seed: int = 0,
             max_height: int = H_MAX_DEFAULT):
        """Lê um estado MRST a partir de `offset`; devolve (estado, novo offset)."""
        if len(payload) < offset + _HEADER.size:
            raise FormatError("estado MRST truncado")
        magic, version, block_size, bitmap, d, generation, reduces, inserted = _HEADER.unpack_from(payload, offset)
        if magic != MAGIC:
            raise FormatError(f"magic inválido: {magic!r}")
        if version != VERSION:
            raise FormatError(f"versão MRST não suportada: {version}")
        if d != codec.d:
            raise FormatError(f"dimensão do estado ({d}) difere da do codec ({codec.d})")
        offset += _HEADER.size

        def chunk():
            nonlocal offset
            if len(payload) < offset + _LENGTH.size:
                raise FormatError("bloco MRST truncado")
            (length,) = _LENGTH.unpack_from(payload, offset)
            offset += _LENGTH.size
            if len(payload) < offset + length:
                raise FormatError("bloco MRST truncado")
            data = payload[offset:offset + length]
            offset += length
            return data

        anchors = codec.deserialize_anchors(chunk())
        buffer = codec.deserialize_buffer(chunk())
        buckets = {}
        for level in range(64):
            if bitmap >> level & 1:
                buckets[level] = codec.deserialize(chunk())
        state = cls(codec, block_size, seed, max_height, buckets, buffer, anchors,
                    generation, reduces, inserted)
        state._track_peak()
        return state, offset


def mr_insert(state: MergeReduceState, item: Any) -> MergeReduceState:
    """Insere um item (ou lote) na árvore."""
    return state.insert(item)


def mr_query(state: MergeReduceState) -> Any:
    """Resumo atual de tudo o que foi inserido."""
    return state.query()
