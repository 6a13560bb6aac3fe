import numpy as np
import pytest

from fourierbessel.grid import make_grid
from fourierbessel.transform import hankel_matrix


@pytest.fixture(scope="session")
def grid0():
    return make_grid(0.0, 8.0, 512)


@pytest.fixture(scope="session")
def matrix0(grid0):
    return hankel_matrix(grid0, grid0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
