import pytest

from remez_lab.polynomials.poly import support_size, total_degree
from remez_lab.polynomials.sampling import SCHEMES, multi_indices, random_poly


@pytest.mark.parametrize("scheme", SCHEMES)
def test_degree_zero_gives_constant(scheme):
    f = random_poly(2, 0, 3, seed=5, scheme=scheme)
    assert list(f) == [(0, 0)]


@pytest.mark.parametrize("scheme", SCHEMES)
def test_same_seed_same_polynomial(scheme):
    assert random_poly(4, 3, 3, seed=9, scheme=scheme) == random_poly(4, 3, 3, seed=9, scheme=scheme)


def test_different_seeds_differ():
    assert random_poly(3, 2, 3, seed=1) != random_poly(3, 2, 3, seed=2)


def test_sparse_uniform_structure():
    f = random_poly(4, 3, 3, seed=7, scheme="sparse-uniform")
    assert 1 <= len(f) <= 8
    for alpha in f:
        assert total_degree(alpha) <= 3
        assert max(alpha) <= 2


def test_unimodular_coefficients():
    f = random_poly(3, 3, 4, seed=3, scheme="unimodular")
    assert all(abs(abs(c) - 1) < 1e-12 for c in f.coeffs)


def test_multi_indices_count():
    # n=2, d=2, K=3: 00, 01, 02, 10, 20, 11
    assert len(multi_indices(2, 2, 3)) == 6
    indices = multi_indices(4, 3, 3)
    assert all(support_size(a) <= min(4, 3) and sum(a) <= 3 for a in indices)
    assert (0, 1, 1, 1) in indices


def test_unknown_scheme_rejected():
    with pytest.raises(ValueError):
        random_poly(2, 2, 3, seed=0, scheme="gaussian")
