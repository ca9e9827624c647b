"""
Probability measures on Omega_2K matching the first K-1 moments of a point z.

For |z| <= eps_star the solution p = D_K^{-1} v_z of the moment system is a
probability vector, which transfers sup norms from the dilated torus
(eps_star T)^n to the grid Omega_2K^n.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from remez_lab.exceptions import DimensionMismatchError, MomentSystemError, OutsideLiftRadiusError
from remez_lab.polynomials.poly import Poly

logger = logging.getLogger(__name__)

INVERSE_RESIDUAL_TOL = 1e-10
# slack for points placed exactly on the circle of radius eps_star
RADIUS_RTOL = 1e-12


@dataclass(frozen=True)
class MomentSystem:
    K: int
    matrix: np.ndarray
    inverse: np.ndarray
    inf_norm_inv: float
    norm_radius: float
    eps_star: float

    @property
    def size(self) -> int:
        return 2 * self.K

    def roots(self) -> np.ndarray:
        """The points w_2K^k, k = 0..2K-1, carrying the measure."""
        return np.exp(1j * np.pi * np.arange(self.size) / self.K)

    def moment_vector(self, z: complex) -> np.ndarray:
        """v_z = (1, Re z, ..., Re z^K, Im z, ..., Im z^{K-1})."""
        powers = np.power(complex(z), np.arange(1, self.K + 1))
        return np.concatenate(([1.0], powers.real, powers[: self.K - 1].imag))


@dataclass(frozen=True)
class LiftedMeasure:
    z: complex
    K: int
    probs: np.ndarray

    def moments(self, count: int) -> np.ndarray:
        """E[xi^m] for m = 0..count-1 under the measure."""
        roots = np.exp(1j * np.pi * np.arange(2 * self.K) / self.K)
        return np.array([self.probs @ roots**m for m in range(count)])

    def moment_residual(self) -> float:
        """max_m |E[xi^m] - z^m| over 0 <= m <= K-1."""
        target = np.power(complex(self.z), np.arange(self.K))
        return float(np.max(np.abs(self.moments(self.K) - target)))

    def total_mass_residual(self) -> float:
        return float(abs(self.probs.sum() - 1.0))

    def min_probability(self) -> float:
        return float(self.probs.min())


@lru_cache(maxsize=32)
def build_moment_system(K: int) -> MomentSystem:
    """Assemble D_K, invert it with partial pivoting and derive eps_star."""
    if K < 3:
        raise ValueError(f"the moment system needs K >= 3, got {K}")
    theta = np.pi / K
    k = np.arange(2 * K)
    rows = [np.ones(2 * K)]
    rows += [np.cos(k * m * theta) for m in range(1, K + 1)]
    rows += [np.sin(k * m * theta) for m in range(1, K)]
    matrix = np.vstack(rows)

    try:
        lu, piv = lu_factor(matrix)
    except (ValueError, np.linalg.LinAlgError) as e:
        raise MomentSystemError(f"D_{K} could not be factorized: {e}") from e
    inverse = lu_solve((lu, piv), np.eye(2 * K))
    residual = float(np.max(np.abs(matrix @ inverse - np.eye(2 * K))))
    if not np.all(np.isfinite(inverse)) or residual > INVERSE_RESIDUAL_TOL:
        raise MomentSystemError(f"D_{K} inverse residual {residual:.3e} exceeds {INVERSE_RESIDUAL_TOL}")

    inf_norm_inv = float(np.max(np.abs(inverse).sum(axis=1)))
    # within 1/(2K ||D^-1||) every p_j stays within 1/(2K) of uniform, and any
    # smaller radius keeps that; the 1/(2K)^2 cap keeps C1 >= (d+1)(2K)^{2d}
    norm_radius = 1.0 / (2 * K * inf_norm_inv)
    eps_star = min(norm_radius, 1.0 / (2 * K) ** 2)
    matrix.flags.writeable = False
    inverse.flags.writeable = False
    logger.debug("Built D_%d: ||D^-1||=%.6g, norm radius=%.6g, eps*=%.6g", K, inf_norm_inv, norm_radius, eps_star)
    return MomentSystem(
        K=K,
        matrix=matrix,
        inverse=inverse,
        inf_norm_inv=inf_norm_inv,
        norm_radius=norm_radius,
        eps_star=eps_star,
    )


def solve_probabilities(sys: MomentSystem, z: complex) -> np.ndarray:
    """D_K^{-1} v_z without any radius check (nonnegativity not guaranteed)."""
    return sys.inverse @ sys.moment_vector(z)


def lift_measure(sys: MomentSystem, z: complex) -> LiftedMeasure:
    if abs(z) > sys.eps_star * (1 + RADIUS_RTOL):
        raise OutsideLiftRadiusError(
            f"|z|={abs(z):.6g} exceeds eps*={sys.eps_star:.6g} for K={sys.K}; nonnegativity is not guaranteed"
        )
    return LiftedMeasure(z=complex(z), K=sys.K, probs=solve_probabilities(sys, z))


def lifted_expectation(f: Poly, z: Sequence[complex]) -> complex:
    """
    E f(xi) under the product of the coordinate lifts of z, computed by
    substituting each coordinate's lifted moments for its powers.
    """
    point = np.asarray(z, dtype=np.complex128).reshape(-1)
    if point.shape[0] != f.n:
        raise DimensionMismatchError(f"point has {point.shape[0]} coordinates, polynomial has {f.n} variables")
    sys = build_moment_system(f.K)
    moment_table = np.array([lift_measure(sys, zj).moments(f.K) for zj in point]).reshape(f.n, f.K)
    if f.is_zero:
        return 0j
    columns = np.arange(f.n)
    monomials = np.prod(moment_table[columns[np.newaxis, :], f.alphas], axis=1)
    return complex(monomials @ f.coeffs)


def step1_bound(d: int, K: int) -> float:
    """C1 = (d+1) eps_star^{-d}, the torus-to-Omega_2K constant."""
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    eps = build_moment_system(K).eps_star
    return (d + 1) * eps ** (-d)


def empirical_lift_radius(sys: MomentSystem, directions: int = 64, iterations: int = 60) -> float:
    """
    Smallest, over `directions` evenly spaced angles, of the largest radius
    whose moment solution stays nonnegative (found by bisection). This is
    measured data; nothing is claimed about optimality.
    """
    radii = []
    for phi in 2 * np.pi * np.arange(directions) / directions:
        direction = np.exp(1j * phi)
        lo, hi = sys.eps_star, 1.0
        if solve_probabilities(sys, hi * direction).min() >= 0:
            radii.append(hi)
            continue
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            if solve_probabilities(sys, mid * direction).min() >= 0:
                lo = mid
            else:
                hi = mid
        radii.append(lo)
    return float(min(radii))
