"""
Filtro em dois estágios: RoughSens por lote de k pontos, depois BatchSens
sobre os sobreviventes, também em lotes de k.
"""
import logging
from typing import Dict, Tuple

import numpy as np

from .settings import PipelineConfig
from ..geometry.types import Dataset
from ..quadtree.rough_sens import rough_sens
from ..sensitivity.base_estimator import estimate_values
from ..sensitivity.batch_sens import batch_sens
from ..utils.rng import derive_rng

logger = logging.getLogger(__name__)


class TwoStageFilter:
    """
    Cadeia de estimadores: o estágio grosseiro descarta a maior parte do stream
    com probabilidades infladas por n^alpha; o estágio refinado amostra os
    sobreviventes com sensibilidades de fator constante.

    Os pesos seguem Horvitz-Thompson: w / p1 no primeiro estágio, / p2 no segundo.
    """

    def __init__(self, config: PipelineConfig, sketch_dim: int):
        self.config = config
        self.lam = config.lam
        self.pending = Dataset.empty(config.d, config.grid_delta)
        self.pending_sketch = Dataset.empty(sketch_dim)
        self.rough_steps = 0
        self.refine_steps = 0
        self.stats = {
            'offered': 0,
            'rough_kept': 0,
            'rough_forced': 0,
            'refined_offered': 0,
            'refined_kept': 0
        }

    def _draw(self, probs: np.ndarray, key: str, step: int) -> np.ndarray:
        rng = derive_rng(self.config.seed, key, step)
        return rng.random(probs.shape[0]) < probs

    def rough_stage(self, summary: Dataset, batch: Dataset, batch_sketch: Dataset,
                    n_bound: int) -> Tuple[Dataset, Dataset]:
        """
        Primeiro estágio: p1 = min(1, lambda * n^alpha * s_rough).

        Returns:
            Tupla (sobreviventes nas coordenadas originais, sobreviventes no espaço do esboço)
        """
        step = self.rough_steps
        self.rough_steps += 1
        self.stats['offered'] += len(batch)
        if not self.config.use_rough_filter:
            self.stats['rough_kept'] += len(batch)
            return batch, batch_sketch
        rng = derive_rng(self.config.seed, "rough", step)
        estimates = rough_sens(summary, batch_sketch, self.config.k, self.config.z, rng,
                               self.config.alpha, self.config.iota, n_bound)
        inflation = float(n_bound) ** self.config.alpha
        probs = np.minimum(1.0, self.lam * inflation * estimate_values(estimates))
        keep = self._draw(probs, "rough-draw", step)
        self.stats['rough_kept'] += int(keep.sum())
        self.stats['rough_forced'] += int(np.count_nonzero(probs >= 1.0))
        weights = batch.weights[keep] / probs[keep]
        return (Dataset(batch.points[keep], weights, batch.delta),
                Dataset(batch_sketch.points[keep], weights))

    def refine_stage(self, summary: Dataset) -> Tuple[Dataset, Dataset]:
        """
        Segundo estágio sobre os sobreviventes pendentes: p2 = min(1, lambda * sigma).
        """
        step = self.refine_steps
        self.refine_steps += 1
        batch, batch_sketch = self.pending, self.pending_sketch
        self.pending = Dataset.empty(batch.d, batch.delta)
        self.pending_sketch = Dataset.empty(batch_sketch.d)
        self.stats['refined_offered'] += len(batch)

        rng = derive_rng(self.config.seed, "refine", step)
        estimates = batch_sens(summary, batch_sketch, self.config.k, self.config.z, rng)
        probs = np.minimum(1.0, self.lam * estimate_values(estimates))
        keep = self._draw(probs, "refine-draw", step)
        self.stats['refined_kept'] += int(keep.sum())
        weights = batch.weights[keep] / probs[keep]
        return (Dataset(batch.points[keep], weights, batch.delta),
                Dataset(batch_sketch.points[keep], weights))

    def process(self, summary: Dataset, batch: Dataset, batch_sketch: Dataset,
                n_bound: int) -> Tuple[Dataset, Dataset]:
        """
        Passa um lote pela cadeia.

        Args:
            summary: Coreset de fator constante do histórico (espaço do esboço)
            batch: Lote nas coordenadas originais
            batch_sketch: Mesmo lote projetado
            n_bound: Limite corrente de n

        Returns:
            Tupla (pontos que seguem para o merge-and-reduce, mesmos pontos projetados)
        """
        survivors, survivors_sketch = self.rough_stage(summary, batch, batch_sketch, n_bound)
        self.pending = self.pending.union(survivors)
        self.pending_sketch = self.pending_sketch.union(survivors_sketch)
        if len(self.pending) < self.config.effective_batch_size:
            return Dataset.empty(batch.d, batch.delta), Dataset.empty(batch_sketch.d)
        return self.refine_stage(summary)

    def get_stats(self) -> Dict[str, int]:
        return dict(self.stats)
