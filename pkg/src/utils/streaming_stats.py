"""
Estatística incremental com histograma em escala logarítmica (tempos por atualização).
"""
import math
from typing import Any, Dict

import numpy as np


class StreamingStat:
    """
    Acumula contagem, média, desvio, extremos e histograma sem guardar as amostras.
    """

    def __init__(self, hist_min: float = 1e-6, hist_max: float = 10.0, hist_bins: int = 28):
        self.count = 0
        self.mean_val = 0.0
        self.m2 = 0.0
        self.min_val = float("inf")
        self.max_val = float("-inf")
        self.hist_edges = np.logspace(math.log10(hist_min), math.log10(hist_max), hist_bins + 1)
        self.hist_counts = np.zeros(hist_bins, dtype=np.int64)
        self.underflow = 0
        self.overflow = 0

    def add(self, x: float) -> None:
        self.count += 1
        # Welford
        delta = x - self.mean_val
        self.mean_val += delta / self.count
        self.m2 += delta * (x - self.mean_val)
        self.min_val = min(self.min_val, x)
        self.max_val = max(self.max_val, x)
        if x < self.hist_edges[0]:
            self.underflow += 1
        elif x > self.hist_edges[-1]:
            self.overflow += 1
        else:
            idx = int(np.searchsorted(self.hist_edges, x, side="right")) - 1
            self.hist_counts[min(idx, len(self.hist_counts) - 1)] += 1

    def mean(self) -> float:
        return self.mean_val if self.count else 0.0

    def std(self) -> float:
        if self.count < 2:
            return 0.0
        return math.sqrt(max(self.m2 / (self.count - 1), 0.0))

    def summary(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "mean": self.mean(),
            "std": self.std(),
            "min": self.min_val if self.count else 0.0,
            "max": self.max_val if self.count else 0.0,
            "hist_edges": self.hist_edges.tolist(),
            "hist_counts": self.hist_counts.tolist(),
            "underflow": self.underflow,
            "overflow": self.overflow,
        }
