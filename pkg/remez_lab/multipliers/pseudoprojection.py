"""
The maximum support pseudoprojection and its transfer to the hypercube.

tau_alpha = prod_{alpha_j != 0} (1 - w_K^{alpha_j}) is kept exact in Z[w_2K];
the multiplier D keeps the terms of maximal support size, each weighted by
its tau factor.
"""

import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from remez_lab.algebra.cyclotomic import CycInt, one_minus_root
from remez_lab.config import OMEGA2_CAP, check_cap
from remez_lab.exceptions import UndefinedSupportError
from remez_lab.polynomials.grid import grid_exponents
from remez_lab.polynomials.poly import Poly, evaluate_at_exponents, part_homogeneous, support, support_size

logger = logging.getLogger(__name__)

SUPPORT_GROWTH = 2 + 2 * np.sqrt(2)
TOP_PART_ATOL = 1e-12


@lru_cache(maxsize=4096)
def _tau_of_multiset(degrees: Tuple[int, ...], K: int) -> CycInt:
    tau = CycInt.one(2 * K)
    for k in degrees:
        tau = tau * one_minus_root(k, K)
    return tau


def tau_of(alpha: Sequence[int], K: int) -> CycInt:
    """Exact tau factor of a multi-index; the zero multi-index gives 1."""
    degrees = tuple(sorted(int(a) for a in alpha if a != 0))
    if any(a < 0 or a > K - 1 for a in degrees):
        raise ValueError(f"multi-index {tuple(alpha)} has entries outside 0..{K - 1}")
    return _tau_of_multiset(degrees, K)


def pseudoproject_iter(f: Poly, k: int) -> Poly:
    """D^k f: the top-support terms of f with coefficients times tau_alpha^k."""
    if k < 1:
        raise ValueError(f"iterate count must be positive, got {k}")
    ell = f.max_support_size
    if ell is None:
        raise UndefinedSupportError("the pseudoprojection of the zero polynomial is undefined")
    top = f.restrict(lambda alpha: support_size(alpha) == ell)
    return top.map_coefficients(lambda alpha, c: c * (tau_of(alpha, f.K) ** k).to_complex())


def pseudoproject(f: Poly) -> Poly:
    return pseudoproject_iter(f, 1)


def omega2_transfer(f: Poly, cap: Optional[int] = None) -> np.ndarray:
    """
    G(f) tabulated on {-1, 1}^n: G(f)(x) = f((1+w)/2 + (1-w)/2 x). Entry b of
    the flat table (bits of b, first variable most significant) is the value
    at x_j = (-1)^{b_j}, i.e. at z = w^b.
    """
    check_cap(2**f.n, OMEGA2_CAP if cap is None else cap, what=f"Omega_2^{f.n}")
    bits = grid_exponents(2, f.n, 0, 2**f.n)
    # z_j = w_K^{b_j}: exponent b_j on Omega_K
    return evaluate_at_exponents(f, bits, f.K)


def walsh_expansion(table: np.ndarray, atol: float = 0.0) -> Poly:
    """
    Multilinear expansion g(x) = sum_A g_hat(A) x^A of a table on {-1, 1}^n
    laid out as in omega2_transfer, as a K=2 polynomial.
    """
    values = np.asarray(table, dtype=np.complex128).reshape(-1)
    n = int(round(np.log2(values.shape[0]))) if values.shape[0] > 1 else 0
    if 2**n != values.shape[0]:
        raise ValueError(f"table length {values.shape[0]} is not a power of two")
    coeffs = values.copy()
    h = 1
    while h < coeffs.shape[0]:
        blocks = coeffs.reshape(-1, 2, h)
        top, bottom = blocks[:, 0, :].copy(), blocks[:, 1, :].copy()
        blocks[:, 0, :] = top + bottom
        blocks[:, 1, :] = top - bottom
        coeffs = blocks.reshape(-1)
        h *= 2
    coeffs /= values.shape[0]
    sets = grid_exponents(2, n, 0, 2**n)
    return Poly(n, 2, {tuple(A): c for A, c in zip(sets, coeffs) if abs(c) > atol})


def q_top(g: Poly, atol: float = TOP_PART_ATOL) -> Poly:
    """Highest-degree homogeneous part of a polynomial on Omega_2^n."""
    significant = g.chop(atol)
    if significant.is_zero:
        return significant
    return part_homogeneous(significant, significant.degree)


def expected_top_part(f: Poly) -> Poly:
    """2^{-l} sum_{|A|=l} (sum_{supp(alpha)=A} tau_alpha a_alpha) x^A with l the max support size."""
    ell = f.max_support_size
    if ell is None:
        return Poly.zero(f.n, 2)
    terms = {}
    for alpha, coeff in f.items():
        if support_size(alpha) != ell:
            continue
        indicator = [0] * f.n
        for j in support(alpha):
            indicator[j] = 1
        key = tuple(indicator)
        terms[key] = terms.get(key, 0j) + tau_of(alpha, f.K).to_complex() * coeff / 2**ell
    return Poly(f.n, 2, terms)


def transfer_identity_residual(f: Poly) -> Tuple[float, float]:
    """
    (max coefficient gap between Q(G(f)) and its closed form, max coefficient
    of G(f) above degree l).
    """
    expansion = walsh_expansion(omega2_transfer(f))
    ell = f.max_support_size or 0
    expected = expected_top_part(f)
    actual = q_top(expansion)
    if expected.chop(TOP_PART_ATOL).is_zero:
        # the top form cancels, so Q(G(f)) sits below degree l
        actual = part_homogeneous(expansion, ell)
    keys = set(actual) | set(expected)
    gap = max((abs(actual.coefficient(A) - expected.coefficient(A)) for A in keys), default=0.0)
    above = max((abs(c) for A, c in expansion.items() if sum(A) > ell), default=0.0)
    return float(gap), float(above)
