"""
Classe base para os codecs de resumo usados pela árvore merge-and-reduce.
"""
from abc import ABC, abstractmethod
from typing import Any, List, Sequence, Tuple

import numpy as np


class BaseSummaryCodec(ABC):
    """
    Classe abstrata base para os codecs de resumo.

    A árvore merge-and-reduce só conhece esta interface: como unir, reduzir,
    codificar e decodificar resumos. O clustering usa conjuntos de pontos
    (KZC1) e o subespaço usa conjuntos de linhas (LPE1).
    """

    name: str = "base"

    def __init__(self, d: int):
        self.d = int(d)

    @abstractmethod
    def empty(self) -> Any:
        """Resumo vazio na dimensão do codec."""
        pass

    @abstractmethod
    def size(self, summary: Any) -> int:
        pass

    @abstractmethod
    def union(self, parts: Sequence[Any]) -> Any:
        """Concatena resumos preservando a ordem."""
        pass

    @abstractmethod
    def split(self, summary: Any, count: int) -> Tuple[Any, Any]:
        """Separa os primeiros `count` elementos do restante."""
        pass

    @abstractmethod
    def reduce(self, summary: Any, rng: np.random.Generator) -> Any:
        """
        Reduz o resumo para o tamanho alvo preservando a garantia de coreset.

        Args:
            summary: União decodificada dos filhos
            rng: Gerador do subfluxo do nó

        Returns:
            Resumo reduzido
        """
        pass

    @abstractmethod
    def compute_anchors(self, summary: Any, rng: np.random.Generator) -> Any:
        """Âncoras globais (solução de fator constante) para o estado completo."""
        pass

    @abstractmethod
    def encode(self, summary: Any, anchors: Any) -> Any:
        pass

    @abstractmethod
    def decode(self, encoded: Any) -> Any:
        pass

    @abstractmethod
    def serialize(self, encoded: Any) -> bytes:
        pass

    @abstractmethod
    def deserialize(self, payload: bytes) -> Any:
        pass

    @abstractmethod
    def record_bytes(self, encoded: Any) -> int:
        """Bytes dos registros, sem cabeçalho nem âncoras."""
        pass

    @abstractmethod
    def overhead_bytes(self, encoded: Any) -> int:
        """Bytes de cabeçalho e âncoras de um nó."""
        pass

    @abstractmethod
    def serialize_buffer(self, summary: Any) -> bytes:
        pass

    @abstractmethod
    def deserialize_buffer(self, payload: bytes) -> Any:
        pass

    @abstractmethod
    def serialize_anchors(self, anchors: Any) -> bytes:
        pass

    @abstractmethod
    def deserialize_anchors(self, payload: bytes) -> Any:
        pass

    def buffer_bytes(self, summary: Any) -> int:
        return len(self.serialize_buffer(summary))

    def decode_all(self, encoded: List[Any]) -> List[Any]:
        return [self.decode(e) for e in encoded]
