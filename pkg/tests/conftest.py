import numpy as np
import pytest

from dyadic_bmo import Signal1D, Signal2D


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_signal(rng, n, dim=1):
    N = 1 << n
    if dim == 1:
        return Signal1D(rng.standard_normal(N))
    return Signal2D(rng.standard_normal((N, N)))
