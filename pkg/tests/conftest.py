"""
Fixtures compartilhadas dos testes.
"""
import numpy as np
import pytest
from sklearn.datasets import make_blobs

from src.geometry.types import Dataset


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def planted_dataset(n: int, k: int, d: int = 2, grid_delta: int = 2**10, seed: int = 0,
                    spread: float = 0.02) -> Dataset:
    """Mistura plantada arredondada para a grade [1, Delta]^d."""
    points, _ = make_blobs(n_samples=n, n_features=d, centers=k, cluster_std=spread * grid_delta,
                           center_box=(0.1 * grid_delta, 0.9 * grid_delta), random_state=seed)
    points = np.clip(np.rint(points), 1, grid_delta)
    return Dataset.from_points(points, delta=grid_delta)


@pytest.fixture
def planted():
    return planted_dataset(400, 3, seed=7)


@pytest.fixture
def small_instance():
    """Instância pequena para os oráculos (n = 12, d = 2)."""
    generator = np.random.default_rng(3)
    points = generator.integers(1, 60, size=(12, 2)).astype(float)
    return Dataset.from_points(points, delta=64)


@pytest.fixture
def gaussian_matrix():
    generator = np.random.default_rng(11)
    return np.rint(generator.standard_normal((200, 4)) * 50)
