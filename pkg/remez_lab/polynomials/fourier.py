"""
Fourier transform on the group Omega_K^n.

Sample tables are numpy arrays of shape (K,)*n whose entry at index e holds
f(w_K^{e_1}, ..., w_K^{e_n}); mappings from exponent tuples are accepted too.
"""

import logging
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from remez_lab.config import check_cap
from remez_lab.exceptions import IncompleteSamplesError
from remez_lab.polynomials.poly import Poly

logger = logging.getLogger(__name__)

Samples = Union[np.ndarray, Mapping[Sequence[int], complex]]


def _samples_to_array(samples: Samples, K: int, n: Optional[int]) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        if n is not None and samples.ndim != n:
            raise IncompleteSamplesError(f"sample array has {samples.ndim} axes, expected {n}")
        if any(size != K for size in samples.shape):
            raise IncompleteSamplesError(f"sample array shape {samples.shape} does not cover Omega_{K}^{samples.ndim}")
        return samples.astype(np.complex128)

    if n is None:
        raise IncompleteSamplesError("n is required when samples are given as a mapping")
    table = np.full((K,) * n, np.nan + 0j, dtype=np.complex128)
    for point, value in samples.items():
        index = tuple(int(e) for e in point)
        if len(index) != n or any(e < 0 or e >= K for e in index):
            raise IncompleteSamplesError(f"sample point {tuple(point)} is not an exponent vector of Omega_{K}^{n}")
        table[index] = value
    missing = int(np.isnan(table.real).sum())
    if missing:
        raise IncompleteSamplesError(f"{missing} of {K ** n} points of Omega_{K}^{n} have no sample")
    return table


def group_dft(
    samples: Samples, K: int, n: Optional[int] = None, atol: float = 1e-13, cap: Optional[int] = None
) -> Poly:
    """
    Fourier coefficients K^{-n} sum_z f(z) conj(z^alpha) of a function on
    Omega_K^n, returned as a polynomial. Coefficients with modulus at most
    atol are treated as zero.
    """
    # checked before a mapping is spread into a dense table
    axes = samples.ndim if isinstance(samples, np.ndarray) else n
    if axes is not None:
        check_cap(K**axes, cap, what=f"Omega_{K}^{axes}")
    table = _samples_to_array(samples, K, n)
    n = table.ndim
    if n == 0:
        return Poly.constant(0, K, complex(table[()]))

    coefficients = np.fft.fftn(table) / K**n
    keep = np.argwhere(np.abs(coefficients) > atol)
    terms = {tuple(int(a) for a in alpha): complex(coefficients[tuple(alpha)]) for alpha in keep}
    logger.debug("DFT on Omega_%d^%d kept %d of %d coefficients", K, n, len(terms), K**n)
    return Poly(n, K, terms)


def inverse_dft(f: Poly, cap: Optional[int] = None) -> np.ndarray:
    """Values of f on Omega_K^n as an array of shape (K,)*n indexed by exponents."""
    K, n = f.K, f.n
    check_cap(K**n, cap, what=f"Omega_{K}^{n}")
    dense = np.zeros((K,) * n, dtype=np.complex128)
    for alpha, coeff in f.items():
        dense[alpha] = coeff
    if n == 0:
        return dense
    return np.fft.ifftn(dense) * K**n
