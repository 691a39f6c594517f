import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


def sym(rng, d):
    g = rng.standard_normal((d, d))
    return (g + g.T) / 2.0
