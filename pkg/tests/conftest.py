import numpy as np
import pytest

from coreep.harness import GeneratorSpec, generate_pair


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_complex(rng, m, n=None):
    n = m if n is None else n
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def pair_with(n, target_index, weight_mode, seed, cap=100.0):
    return generate_pair(GeneratorSpec(n, target_index, weight_mode, seed, cap))
