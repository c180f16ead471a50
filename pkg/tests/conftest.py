import numpy as np
import pytest

from phillipsop import FiberSymmetry, canonical_triplet
from phillipsop.tolerances import Tolerances, get_tolerances, set_tolerances


@pytest.fixture(autouse=True)
def _isolate_tolerances():
    previous = get_tolerances()
    yield
    set_tolerances(previous)


@pytest.fixture
def fs_standard():
    return FiberSymmetry.standard()


@pytest.fixture
def triplet_standard(fs_standard):
    return canonical_triplet(fs_standard)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
