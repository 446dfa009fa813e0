import numpy as np
import pytest

from descm import EvenPolynomialPotential


@pytest.fixture
def rng():
    return np.random.default_rng(0xDE5C)


def random_potential(rng, max_half_degree=5, with_constant=False) -> EvenPolynomialPotential:
    """A random valid even potential with bounded coefficients."""
    m = int(rng.integers(1, max_half_degree + 1))
    coeffs = rng.uniform(-2.0, 2.0, size=m)
    coeffs[-1] = rng.uniform(0.1, 2.0)
    constant = float(rng.uniform(-1.0, 1.0)) if with_constant else 0.0
    return EvenPolynomialPotential(tuple(coeffs), constant=constant)
