"""
Gráficos do benchmark e do explorador (matplotlib + seaborn).
"""
from typing import Optional

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from ..geometry.types import CenterSet, Dataset


def coreset_scatter(X: Dataset, S: Dataset, centers: Optional[CenterSet] = None):
    """
    Dispersão das duas primeiras coordenadas: dados, coreset (tamanho ∝ peso) e centros.

    Returns:
        Figura matplotlib
    """
    fig, ax = plt.subplots(figsize=(8, 6))
    if len(X):
        ax.scatter(X.points[:, 0], X.points[:, 1 if X.d > 1 else 0], s=4, alpha=0.25,
                   color="gray", label="Dados")
    if len(S):
        sizes = 10 + 200 * S.weights / S.weights.max()
        ax.scatter(S.points[:, 0], S.points[:, 1 if S.d > 1 else 0], s=sizes, alpha=0.6,
                   color="tab:blue", label="Coreset")
    if centers is not None and len(centers):
        ax.scatter(centers.centers[:, 0], centers.centers[:, 1 if centers.d > 1 else 0], marker="X", s=160,
                   color="tab:red", label="Centros")
    ax.set_xlabel("x0")
    ax.set_ylabel("x1")
    ax.legend()
    fig.tight_layout()
    return fig


def bench_plot(results: pd.DataFrame, x: str, y: str, hue: Optional[str] = None, title: str = ""):
    """Linha de uma métrica do benchmark em função do parâmetro varrido."""
    fig, ax = plt.subplots(figsize=(8, 5))
    sns.lineplot(data=results, x=x, y=y, hue=hue, marker="o", ax=ax)
    if np.all(results[x] > 0):
        ax.set_xscale("log", base=2)
    ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path: str) -> None:
    fig.savefig(path, dpi=120)
    plt.close(fig)
