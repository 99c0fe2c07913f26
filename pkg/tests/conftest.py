import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, size=None, scale=1.0):
    return scale * (rng.normal(size=size) + 1j * rng.normal(size=size))
