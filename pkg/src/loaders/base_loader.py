"""
Classe base para todos os leitores de entrada.
"""
import os
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from ..errors import ContractError, InputDataError
from ..geometry.types import Dataset
from ..subspace.lewis import RealMatrix

WEIGHT_COLUMN = "weight"


def coordinate_columns(d: int):
    return [f"x{i}" for i in range(d)]


class BaseLoader(ABC):
    """
    Classe abstrata base para os leitores de pontos e linhas.

    Implementa o padrão Strategy: cada formato de arquivo tem seu leitor e
    select_loader escolhe o primeiro capaz de processar o arquivo.
    """

    def __init__(self, path: str, weighted: bool = False):
        """
        Inicializa o leitor com o caminho do arquivo.

        Args:
            path: Caminho do arquivo de entrada
            weighted: Se True, a última coluna traz os pesos
        """
        if not os.path.exists(path):
            raise FileNotFoundError(f"Arquivo de entrada não encontrado: {path}")

        self.path = path
        self.weighted = weighted
        self.loaded_data: Optional[pd.DataFrame] = None

    @abstractmethod
    def load(self) -> pd.DataFrame:
        """
        Lê o arquivo e devolve um DataFrame padronizado.

        Returns:
            DataFrame com as colunas x0..x{d-1} (valores inteiros) e, se houver
            pesos, a coluna "weight"
        """
        pass

    @abstractmethod
    def can_process(self) -> bool:
        """
        Verifica se este leitor reconhece o arquivo.

        Returns:
            True se o leitor pode processar o arquivo
        """
        pass

    def get_data(self) -> pd.DataFrame:
        """Dados lidos, executando a leitura se necessário."""
        if self.loaded_data is None:
            self.loaded_data = self.load()
        return self.loaded_data

    @property
    def d(self) -> int:
        return len([c for c in self.get_data().columns if c != WEIGHT_COLUMN])

    def values(self) -> np.ndarray:
        data = self.get_data()
        return data[coordinate_columns(self.d)].to_numpy(dtype=float).reshape(len(data), self.d)

    def weights(self) -> np.ndarray:
        data = self.get_data()
        if WEIGHT_COLUMN in data.columns:
            return data[WEIGHT_COLUMN].to_numpy(dtype=float)
        return np.ones(len(data))

    def to_dataset(self, delta: Optional[int] = None) -> Dataset:
        """
        Conjunto ponderado para o clustering.

        Raises:
            InputDataError: Pesos não positivos
        """
        weights = self.weights()
        if np.any(weights <= 0):
            raise InputDataError(f"{os.path.basename(self.path)}: pesos devem ser positivos")
        try:
            return Dataset(self.values(), weights, delta)
        except ContractError as e:
            raise InputDataError(str(e))

    def to_matrix(self, entry_bound: Optional[float] = None) -> RealMatrix:
        """Matriz de linhas para o embedding (entradas inteiras com sinal)."""
        return RealMatrix.from_rows(self.values(), entry_bound) if len(self.get_data()) else RealMatrix.empty(self.d)

    def get_metadata(self) -> Dict[str, Any]:
        """
        Retorna metadados sobre a entrada.

        Returns:
            Dicionário com arquivo, leitor, n e d
        """
        data = self.get_data()
        return {
            "source_file": os.path.basename(self.path),
            "loader": self.__class__.__name__,
            "n": int(len(data)),
            "d": self.d,
            "weighted": WEIGHT_COLUMN in data.columns,
        }


def standardize_frame(raw: pd.DataFrame, weighted: bool, source: str) -> pd.DataFrame:
    """
    Converte uma tabela bruta no formato padronizado.

    Uma primeira linha sem nenhum valor numérico é tratada como cabeçalho.

    Raises:
        InputDataError: Célula não numérica, coordenada não inteira ou tabela sem colunas de coordenadas
    """
    if raw.empty:
        return pd.DataFrame(columns=[])
    numeric = raw.apply(pd.to_numeric, errors="coerce")
    if numeric.iloc[0].isna().all():
        numeric = numeric.iloc[1:].reset_index(drop=True)
        raw = raw.iloc[1:].reset_index(drop=True)
    numeric = numeric.dropna(axis=1, how="all") if len(numeric) else numeric
    bad = numeric.isna().any(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise InputDataError(f"{source}: linha {row + 1} malformada: {raw.iloc[row].tolist()}")
    width = numeric.shape[1] - (1 if weighted else 0)
    if width < 1:
        raise InputDataError(f"{source}: nenhuma coluna de coordenadas")
    coords = numeric.iloc[:, :width].to_numpy(dtype=float)
    if np.any(coords != np.rint(coords)):
        raise InputDataError(f"{source}: coordenadas devem ser inteiras")
    frame = pd.DataFrame(coords, columns=coordinate_columns(width))
    if weighted:
        frame[WEIGHT_COLUMN] = numeric.iloc[:, width].to_numpy(dtype=float)
    return frame
