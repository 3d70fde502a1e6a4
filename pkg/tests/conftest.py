import numpy as np
import pytest

from src.core.frames import orthonormal_basis
from src.core.measure import FiniteMeasureSpace

SEED = 1234


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def counting3():
    return FiniteMeasureSpace.counting(3)


@pytest.fixture
def counting2():
    return FiniteMeasureSpace.counting(2)


@pytest.fixture
def weighted2():
    return FiniteMeasureSpace(['a', 'b'], [1.0, 2.0])


@pytest.fixture
def weighted4():
    return FiniteMeasureSpace(['1', '2', '3', '4'], [0.5, 1.0, 1.5, 2.0])


@pytest.fixture
def onb4():
    return orthonormal_basis(4)


@pytest.fixture
def onb8():
    return orthonormal_basis(8)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
