"""
Quadtree grosseira: hierarquia de grades deslocadas aleatoriamente com ramificação zeta.

A célula de um ponto no nível t é floor((x + s) / zeta^t). TreeDist(x, y) vale
sqrt(d) * zeta^t, onde t é o primeiro nível em que x e y caem na mesma célula
(nível L+1, a raiz, se nunca se juntam); vale 0 para pontos idênticos.
"""
import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import TREE_EXTRA_RETRIES
from ..errors import ContractError

logger = logging.getLogger(__name__)


def levels_for(delta: float, zeta: int) -> int:
    """Menor L com zeta^L >= Delta."""
    if zeta < 2:
        raise ContractError(f"ramificação deve ser >= 2: {zeta}")
    levels = 0
    while zeta ** levels < delta:
        levels += 1
    return levels


def branching_for(n: int, iota: float) -> int:
    """zeta = max(2, ceil(n^iota))."""
    return max(2, int(math.ceil(max(n, 1) ** iota)))


class CrudeQuadTree:
    """
    Árvore de grades deslocadas com contagens por célula.

    O deslocamento é sorteado no intervalo contínuo [0, zeta^L)^d; assim pontos
    inteiros nunca caem exatamente sobre uma fronteira.
    """

    def __init__(self, shift: np.ndarray, zeta: int, levels: int):
        self.shift = np.asarray(shift, dtype=float).reshape(-1)
        self.zeta = int(zeta)
        self.levels = int(levels)
        self.d = self.shift.shape[0]
        self.accepted = True
        self.violations = 0
        self.attempts = 1
        self.warning: Optional[str] = None
        self.dilation: Optional[float] = None
        # Mapas por nível: célula -> ids de centros
        self.cell_centers: List[Dict[Tuple[int, ...], List[int]]] = []

    @property
    def root_level(self) -> int:
        return self.levels + 1

    def side(self, level: int) -> float:
        return float(self.zeta) ** level

    def cells(self, points: np.ndarray, level: int) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, self.d)
        return np.floor((points + self.shift) / self.side(level)).astype(np.int64)

    def level_distance(self, level) -> np.ndarray:
        return math.sqrt(self.d) * np.power(float(self.zeta), level)

    def join_levels(self, points: np.ndarray, x: np.ndarray) -> np.ndarray:
        """
        Primeiro nível em que cada ponto divide a célula com x (root_level se nunca).
        """
        points = np.asarray(points, dtype=float).reshape(-1, self.d)
        x = np.asarray(x, dtype=float).reshape(1, self.d)
        joined = np.full(points.shape[0], self.root_level, dtype=np.int64)
        pending = np.ones(points.shape[0], dtype=bool)
        for level in range(self.levels + 1):
            same = np.all(self.cells(points, level) == self.cells(x, level), axis=1)
            newly = pending & same
            joined[newly] = level
            pending &= ~same
            if not pending.any():
                break
        return joined

    def tree_dist_to(self, points: np.ndarray, x: np.ndarray) -> np.ndarray:
        """TreeDist de cada ponto até x."""
        points = np.asarray(points, dtype=float).reshape(-1, self.d)
        x = np.asarray(x, dtype=float).reshape(-1)
        out = self.level_distance(self.join_levels(points, x))
        identical = np.all(points == x, axis=1)
        out[identical] = 0.0
        return out

    def tree_dist(self, x, y) -> float:
        return float(self.tree_dist_to(np.asarray(y, dtype=float).reshape(1, -1), x)[0])

    def margin_violations(self, points: np.ndarray, kappa: float) -> int:
        """
        Número de pontos a menos de side/kappa de alguma fronteira em algum nível.
        """
        points = np.asarray(points, dtype=float).reshape(-1, self.d)
        bad = np.zeros(points.shape[0], dtype=bool)
        for level in range(self.levels + 1):
            side = self.side(level)
            pos = np.mod(points + self.shift, side)
            gap = np.minimum(pos, side - pos)
            bad |= np.any(gap < side / kappa, axis=1)
        return int(bad.sum())

    def measure_dilation(self, points: np.ndarray, max_pairs: int = 4000,
                         rng: Optional[np.random.Generator] = None) -> float:
        """
        Maior razão TreeDist/dist entre pares distintos (amostrados se houver muitos).
        """
        points = np.asarray(points, dtype=float).reshape(-1, self.d)
        n = points.shape[0]
        if n < 2:
            return 1.0
        if n * (n - 1) // 2 <= max_pairs:
            ii, jj = np.triu_indices(n, k=1)
        else:
            rng = rng or np.random.default_rng(0)
            ii = rng.integers(0, n, size=max_pairs)
            jj = rng.integers(0, n, size=max_pairs)
        true = np.linalg.norm(points[ii] - points[jj], axis=1)
        keep = true > 0
        if not keep.any():
            return 1.0
        ii, jj, true = ii[keep], jj[keep], true[keep]
        joined = np.full(ii.shape[0], self.root_level, dtype=np.int64)
        pending = np.ones(ii.shape[0], dtype=bool)
        for level in range(self.levels + 1):
            cells = self.cells(points, level)
            same = np.all(cells[ii] == cells[jj], axis=1)
            joined[pending & same] = level
            pending &= ~same
        return float(max(1.0, np.max(self.level_distance(joined) / true)))

    def index_centers(self, centers: np.ndarray) -> None:
        """Preenche os mapas célula -> ids de centros em todos os níveis."""
        self.cell_centers = []
        for level in range(self.levels + 1):
            table: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
            for cid, cell in enumerate(map(tuple, self.cells(centers, level))):
                table[cell].append(cid)
            self.cell_centers.append(dict(table))

    def centers_in_cell(self, x: np.ndarray, level: int) -> List[int]:
        if level < 0 or level >= len(self.cell_centers):
            return []
        cell = tuple(self.cells(x, level)[0])
        return self.cell_centers[level].get(cell, [])

    def assign_centers(self, points: np.ndarray, centers: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Atribui cada ponto ao centro de menor TreeDist (empate: menor índice).

        Returns:
            Tupla (rótulos, TreeDist até o centro atribuído)
        """
        centers = np.asarray(centers, dtype=float).reshape(-1, self.d)
        TD = np.column_stack([self.tree_dist_to(points, c) for c in centers])
        labels = np.argmin(TD, axis=1)
        return labels, TD[np.arange(TD.shape[0]), labels]


def build_tree_checked(points: np.ndarray, zeta: int, kappa: float, rng: np.random.Generator,
                       max_retries: Optional[int] = None, delta: Optional[float] = None) -> CrudeQuadTree:
    """
    Sorteia deslocamentos até que todo ponto fique longe das fronteiras em todos os níveis.

    Após max_retries tentativas devolve o melhor deslocamento encontrado, com
    accepted=False e um aviso registrado na árvore.

    Args:
        points: Matriz (n, d)
        zeta: Ramificação
        kappa: Fator de margem (> 2)
        rng: Gerador do subfluxo
        max_retries: Limite de novas tentativas (padrão ceil(log2 n) + 10)
        delta: Limite da grade (padrão: maior coordenada)

    Returns:
        CrudeQuadTree; quando a margem não é atingida, traz a dilatação medida
    """
    if kappa <= 2:
        raise ContractError(f"kappa deve ser > 2: {kappa}")
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or not np.all(np.isfinite(points)):
        raise ContractError("pontos da árvore devem formar uma matriz finita")
    n, d = points.shape
    if max_retries is None:
        max_retries = int(math.ceil(math.log2(max(n, 1)))) + TREE_EXTRA_RETRIES
    if delta is None:
        delta = float(np.max(np.abs(points))) if n else 1.0
    levels = levels_for(max(delta, 1.0), zeta)
    top = float(zeta) ** levels

    best: Optional[CrudeQuadTree] = None
    for attempt in range(max_retries + 1):
        tree = CrudeQuadTree(rng.uniform(0.0, top, size=d), zeta, levels)
        tree.violations = tree.margin_violations(points, kappa) if n else 0
        tree.attempts = attempt + 1
        if best is None or tree.violations < best.violations:
            best = tree
        if tree.violations == 0:
            break
    best.attempts = attempt + 1
    best.accepted = best.violations == 0
    if not best.accepted:
        best.warning = (f"margem violada por {best.violations} pontos após {best.attempts} tentativas")
        logger.warning(f"Quadtree aceita com ressalva: {best.warning}")
    if not best.accepted:
        best.dilation = best.measure_dilation(points, rng=rng)
    return best
