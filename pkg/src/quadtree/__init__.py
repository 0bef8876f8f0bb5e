"""
Quadtree grosseira deslocada aleatoriamente, TreeDist e RoughSens.
"""

from .tree import CrudeQuadTree, build_tree_checked, branching_for, levels_for
from .rough_sens import rough_sens, rough_claimed_factor, RoughSensEstimator

__all__ = [
    'CrudeQuadTree',
    'build_tree_checked',
    'branching_for',
    'levels_for',
    'rough_sens',
    'rough_claimed_factor',
    'RoughSensEstimator'
]
