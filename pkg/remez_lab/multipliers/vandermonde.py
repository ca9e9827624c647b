"""
Modified Vandermonde systems V[k-1, j] = c_j^k built from exact tau values.
"""

from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from remez_lab.algebra.cyclotomic import CycInt
from remez_lab.exceptions import CertificateError

EXTENDED_DPS = 50
DOUBLE_COND_LIMIT = 1.0 / np.finfo(np.float64).eps
EXTENDED_COND_LIMIT = 10.0 ** (EXTENDED_DPS - 5)


@dataclass(frozen=True)
class VandermondeInverse:
    c_values: np.ndarray
    inverse: np.ndarray
    residual: float


def modified_vandermonde(c_values: Sequence[complex]) -> np.ndarray:
    c = np.asarray(c_values, dtype=np.complex128)
    exponents = np.arange(1, c.shape[0] + 1)
    return c[np.newaxis, :] ** exponents[:, np.newaxis]


def _mp_value(tau: CycInt):
    return mpmath.fsum(coeff * mpmath.expjpi(mpmath.mpf(2 * j) / tau.order) for j, coeff in enumerate(tau.coeffs))


def _check_distinct(taus: Sequence[CycInt]) -> None:
    if len(set(taus)) < len(taus):
        raise CertificateError(f"modified Vandermonde matrix of size {len(taus)} is singular: repeated tau value")


def invert_modified_vandermonde(taus: Sequence[CycInt], extended: bool = False) -> VandermondeInverse:
    """
    Invert V for the given tau values. `extended` switches to mpmath at
    EXTENDED_DPS digits; the residual max|V V^{-1} - I| is reported either way.

    Repeated tau values, or a condition number past the working precision,
    raise CertificateError.
    """
    J = len(taus)
    if J == 0:
        return VandermondeInverse(np.zeros(0, dtype=np.complex128), np.zeros((0, 0), dtype=np.complex128), 0.0)
    _check_distinct(taus)

    if not extended:
        c = np.array([tau.to_complex() for tau in taus], dtype=np.complex128)
        V = modified_vandermonde(c)
        cond = float(np.linalg.cond(V))
        if not np.isfinite(cond) or cond > DOUBLE_COND_LIMIT:
            raise CertificateError(f"modified Vandermonde matrix of size {J} is numerically singular (cond {cond:.3e})")
        try:
            inverse = np.linalg.inv(V)
        except np.linalg.LinAlgError as e:
            raise CertificateError(f"modified Vandermonde matrix of size {J} is singular: {e}") from e
        residual = float(np.max(np.abs(V @ inverse - np.eye(J))))
        return VandermondeInverse(c, inverse, residual)

    with mpmath.workdps(EXTENDED_DPS):
        c_mp = [_mp_value(tau) for tau in taus]
        V = mpmath.matrix(J, J)
        for k in range(J):
            for j in range(J):
                V[k, j] = c_mp[j] ** (k + 1)
        try:
            inverse_mp = V**-1
        except ZeroDivisionError as e:
            raise CertificateError(f"modified Vandermonde matrix of size {J} is singular") from e
        cond = mpmath.mnorm(V, 1) * mpmath.mnorm(inverse_mp, 1)
        if cond > EXTENDED_COND_LIMIT:
            raise CertificateError(f"modified Vandermonde matrix of size {J} is numerically singular (cond {float(cond):.3e})")
        product = V * inverse_mp
        residual = max(abs(product[r, s] - (1 if r == s else 0)) for r in range(J) for s in range(J))
        inverse = np.array([[complex(inverse_mp[r, s]) for s in range(J)] for r in range(J)], dtype=np.complex128)
        c = np.array([complex(v) for v in c_mp], dtype=np.complex128)
        return VandermondeInverse(c, inverse, float(residual))
