import cmath

import pytest

from remez_lab.polynomials.poly import Poly
from remez_lab.polynomials.sampling import random_poly


@pytest.fixture
def sqrt_omega3():
    return cmath.exp(1j * cmath.pi / 3)


@pytest.fixture
def omega3():
    return cmath.exp(2j * cmath.pi / 3)


@pytest.fixture
def mixed_support_poly():
    """2 z1 + 3 z1 z2^2 at K = 3."""
    return Poly(2, 3, {(1, 0): 2.0, (1, 2): 3.0})


@pytest.fixture
def make_random():
    """Factory for seeded random polynomials."""

    def _make(n, d, K, seed, scheme="dense-gaussian", max_terms=None):
        return random_poly(n, d, K, seed, scheme=scheme, max_terms=max_terms)

    return _make
