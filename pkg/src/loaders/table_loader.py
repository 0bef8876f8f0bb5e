"""
Leitor de tabelas: CSV de inteiros (pandas) e planilhas .xlsx (pandas + openpyxl).
"""
import logging
import os

import pandas as pd

from .base_loader import BaseLoader, standardize_frame
from ..errors import InputDataError

logger = logging.getLogger(__name__)


class TableLoader(BaseLoader):
    """
    Um ponto (ou linha da matriz) por linha da tabela, d colunas inteiras e,
    com weighted=True, uma coluna final de pesos.
    """

    extensions = ('.csv', '.txt', '.xlsx')

    def can_process(self) -> bool:
        return os.path.splitext(self.path)[1].lower() in self.extensions

    def load(self) -> pd.DataFrame:
        source = os.path.basename(self.path)
        try:
            if self.path.lower().endswith('.xlsx'):
                raw = pd.read_excel(self.path, header=None, dtype=str, engine="openpyxl")
            else:
                raw = pd.read_csv(self.path, header=None, dtype=str, skip_blank_lines=True)
        except pd.errors.EmptyDataError:
            logger.info(f"{source}: arquivo vazio")
            return pd.DataFrame()
        except (pd.errors.ParserError, ValueError) as e:
            raise InputDataError(f"{source}: tabela ilegível: {e}")
        frame = standardize_frame(raw, self.weighted, source)
        logger.info(f"{source}: {len(frame)} linhas lidas")
        return frame
