import numpy as np
import pytest

from remez_lab.algebra.cyclotomic import CycInt
from remez_lab.config import OMEGA2_CAP
from remez_lab.exceptions import CapExceededError, UndefinedSupportError
from remez_lab.multipliers.pseudoprojection import (
    SUPPORT_GROWTH,
    expected_top_part,
    omega2_transfer,
    pseudoproject,
    pseudoproject_iter,
    q_top,
    tau_of,
    transfer_identity_residual,
    walsh_expansion,
)
from remez_lab.norms.norm_oracle import grid_sup_norm
from remez_lab.polynomials.poly import Poly

OMEGA3 = np.exp(2j * np.pi / 3)


def test_tau_of_zero_index_is_one():
    assert tau_of((0, 0, 0), 3) == CycInt.one(6)


def test_tau_of_one_two_is_three():
    assert tau_of((1, 2), 3) == CycInt.from_coefficients(6, [3])


def test_tau_of_beta_pair_coincide():
    assert tau_of((2, 1, 1, 1, 1, 1, 1, 1), 3) == tau_of((2, 2, 2, 2, 2, 2, 2, 1), 3)


def test_tau_of_rejects_large_entries():
    with pytest.raises(ValueError):
        tau_of((3, 0), 3)


def test_pseudoprojection_example(mixed_support_poly):
    df = pseudoproject(mixed_support_poly)
    assert list(df) == [(1, 2)]
    assert df.coefficient((1, 2)) == pytest.approx(9, abs=1e-12)


def test_pseudoprojection_of_constant():
    f = Poly.constant(3, 4, 2 - 1j)
    assert pseudoproject(f) == f


def test_iterates_multiply_tau_powers(mixed_support_poly):
    assert pseudoproject_iter(mixed_support_poly, 3).coefficient((1, 2)) == pytest.approx(81, abs=1e-9)


def test_zero_polynomial_rejected():
    with pytest.raises(UndefinedSupportError):
        pseudoproject(Poly.zero(2, 3))
    with pytest.raises(ValueError):
        pseudoproject_iter(Poly.constant(1, 3, 1), 0)


@pytest.mark.parametrize("K", [3, 4, 5])
def test_support_growth_bound(make_random, K):
    for seed in range(30):
        n = 2 + seed % 4
        f = make_random(n, 1 + seed % 4, K, seed, scheme="sparse-uniform")
        ell = f.max_support_size
        assert grid_sup_norm(pseudoproject(f), K) <= SUPPORT_GROWTH**ell * grid_sup_norm(f, K) * (1 + 1e-9)


def test_transfer_of_coordinate():
    f = Poly(1, 3, {(1,): 1.0})
    table = omega2_transfer(f)
    np.testing.assert_allclose(table, [1, OMEGA3], atol=1e-15)
    g = walsh_expansion(table)
    assert g.coefficient((0,)) == pytest.approx((1 + OMEGA3) / 2)
    top = q_top(g)
    assert list(top) == [(1,)]
    assert top.coefficient((1,)) == pytest.approx((1 - OMEGA3) / 2)


def test_transfer_of_constant():
    f = Poly.constant(2, 3, 4.0)
    assert q_top(walsh_expansion(omega2_transfer(f))).coefficient((0, 0)) == pytest.approx(4)
    assert transfer_identity_residual(f)[0] <= 1e-12


def test_walsh_expansion_of_parity():
    # x1 x2 on {-1,1}^2 in the flat layout: b = 00, 01, 10, 11
    g = walsh_expansion(np.array([1, -1, -1, 1]))
    assert list(g) == [(1, 1)]
    assert g.coefficient((1, 1)) == pytest.approx(1)


def test_walsh_expansion_rejects_bad_length():
    with pytest.raises(ValueError):
        walsh_expansion(np.ones(3))


def test_transfer_identity_on_random_instances(make_random):
    for seed in range(20):
        f = make_random(4, 3, 3, seed)
        gap, above = transfer_identity_residual(f)
        assert gap <= 1e-9
        assert above <= 1e-9


def test_transfer_cap():
    with pytest.raises(CapExceededError):
        omega2_transfer(Poly.constant(4, 3, 1.0), cap=8)
    assert OMEGA2_CAP == 2**20


def test_transfer_identity_goes_through_top_part():
    f = Poly(2, 3, {(1, 1): 1.0, (1, 0): 2.0})
    expected = expected_top_part(f)
    top = q_top(walsh_expansion(omega2_transfer(f)))
    assert top.degree == 2
    assert top.coefficient((1, 1)) == pytest.approx(expected.coefficient((1, 1)))
    assert transfer_identity_residual(f)[0] <= 1e-12


def test_transfer_identity_when_top_form_cancels():
    # tau_1 a_1 + tau_2 a_2 = 0, and f(1) = f(w) = w - w^2
    f = Poly(1, 3, {(1,): 1 - OMEGA3**2, (2,): -(1 - OMEGA3)})
    top = q_top(walsh_expansion(omega2_transfer(f)))
    assert top.degree == 0
    assert top.coefficient((0,)) == pytest.approx(OMEGA3 - OMEGA3**2)
    gap, above = transfer_identity_residual(f)
    assert gap <= 1e-12
    assert above == 0
