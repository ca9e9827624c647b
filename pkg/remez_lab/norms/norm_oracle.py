"""
Sup norms over finite grids and the polytorus, plus coefficient norms.

Grid norms are exact maxima by enumeration. The torus sup is not computable
exactly; it is reported as a (lower, upper) pair where the lower side comes
from cyclic coordinate ascent and the upper side is the coefficient l1 norm.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from remez_lab.config import DEFAULT_RESTARTS, DEFAULT_SAMPLES_PER_AXIS, DEFAULT_TORUS_TOL, enumeration_cap
from remez_lab.exceptions import CapExceededError
from remez_lab.polynomials.grid import chunk_rows, grid_size, iter_grid
from remez_lab.polynomials.poly import Poly, evaluate_at_exponents

logger = logging.getLogger(__name__)

# relative slack under which two grid values count as a tie
TIE_RTOL = 1e-12
MAX_SWEEPS = 200


@dataclass(frozen=True)
class NormReport:
    grid_norm: float
    grid_order: int
    torus_lower: float
    torus_upper: float
    argmax_point: Tuple[complex, ...] = field(default_factory=tuple)
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "grid_norm": self.grid_norm,
            "grid_order": self.grid_order,
            "torus_lower": self.torus_lower,
            "torus_upper": self.torus_upper,
            "argmax_point": [{"re": z.real, "im": z.imag} for z in self.argmax_point],
            "iterations": self.iterations,
        }


def grid_argmax(f: Poly, M: int, radius: float = 1.0, cap: Optional[int] = None) -> Tuple[float, np.ndarray]:
    """
    Max of |f| over (radius * Omega_M)^n and the lexicographically smallest
    exponent vector attaining it (up to a relative tie tolerance).
    """
    best_value = -1.0
    best_exponents = np.zeros(f.n, dtype=np.int64)
    for _, block in iter_grid(M, f.n, chunk_rows(len(f)), cap):
        values = np.abs(evaluate_at_exponents(f, block, M, radius))
        chunk_max = float(values.max())
        if chunk_max > best_value * (1 + TIE_RTOL) or best_value < 0:
            first = int(np.argmax(values >= chunk_max * (1 - TIE_RTOL)))
            best_exponents = block[first].copy()
            best_value = chunk_max
        elif chunk_max > best_value:
            best_value = chunk_max
    return best_value, best_exponents


def grid_sup_norm(f: Poly, M: int, radius: float = 1.0, cap: Optional[int] = None) -> float:
    """Exact max of |f| over Omega_M^n (scaled by `radius` when given)."""
    if M < 1:
        raise ValueError(f"grid order must be positive, got {M}")
    return grid_argmax(f, M, radius, cap)[0]


def coeff_l1(f: Poly) -> float:
    return float(np.abs(f.coeffs).sum())


def bh_norm(f: Poly, d: int) -> float:
    """l_p norm of the coefficients with the Bohnenblust-Hille exponent p = 2d/(d+1)."""
    if d < 1:
        raise ValueError("the Bohnenblust-Hille exponent needs d >= 1")
    if f.degree > d:
        raise ValueError(f"polynomial has degree {f.degree} above d={d}")
    p = 2.0 * d / (d + 1)
    return float((np.abs(f.coeffs) ** p).sum() ** (1.0 / p))


class _CoordinateAscent:
    """Cyclic coordinate ascent of |f| on T^n."""

    def __init__(self, f: Poly, samples_per_axis: int, tol: float):
        self.f = f
        self.tol = tol
        self.angles = 2 * np.pi * np.arange(samples_per_axis) / samples_per_axis
        self.step = 2 * np.pi / samples_per_axis
        self.powers = np.arange(f.K)
        # (samples x K) table of e^{i m t}
        self.basis = np.exp(1j * np.outer(self.angles, self.powers))

    def _slice_coefficients(self, z: np.ndarray, j: int) -> np.ndarray:
        """Coefficients of f as a polynomial in z_j with the other coordinates fixed."""
        monomials = np.power(z[np.newaxis, :], self.f.alphas)
        monomials[:, j] = 1.0
        weights = np.prod(monomials, axis=1) * self.f.coeffs
        c = np.zeros(self.f.K, dtype=np.complex128)
        np.add.at(c, self.f.alphas[:, j], weights)
        return c

    def _maximize_slice(self, c: np.ndarray) -> Tuple[float, float]:
        values = np.abs(self.basis @ c)
        i = int(np.argmax(values))
        t0, v0 = float(self.angles[i]), float(values[i])

        def negative_modulus(t: float) -> float:
            return -abs(np.exp(1j * t * self.powers) @ c)

        refined = minimize_scalar(
            negative_modulus, bounds=(t0 - self.step, t0 + self.step), method="bounded", options={"xatol": 1e-12}
        )
        if refined.success and -refined.fun > v0:
            return float(refined.x), float(-refined.fun)
        return t0, v0

    def run(self, start: np.ndarray) -> Tuple[float, np.ndarray, int]:
        z = start.astype(np.complex128).copy()
        value = abs(complex(np.prod(np.power(z[np.newaxis, :], self.f.alphas), axis=1) @ self.f.coeffs))
        sweeps = 0
        while sweeps < MAX_SWEEPS:
            sweeps += 1
            previous = value
            for j in range(self.f.n):
                c = self._slice_coefficients(z, j)
                t, v = self._maximize_slice(c)
                if v > value:
                    z[j] = np.exp(1j * t)
                    value = v
            if value - previous <= self.tol * max(value, 1e-300):
                break
        return value, z, sweeps


def torus_sup_lower(
    f: Poly,
    restarts: int = DEFAULT_RESTARTS,
    samples_per_axis: int = DEFAULT_SAMPLES_PER_AXIS,
    tol: float = DEFAULT_TORUS_TOL,
    grid_order: Optional[int] = None,
    seed: int = 0,
    cap: Optional[int] = None,
) -> NormReport:
    """
    Certified lower bound on ||f||_{T^n} by cyclic coordinate ascent.

    Each coordinate slice is a polynomial of degree <= K-1 on the circle,
    maximized by dense angular sampling and a bounded scalar refinement.
    Starts are the best point of Omega_M^n (M = grid_order, default 2K, when
    the grid fits under the cap) and `restarts` random points.
    """
    if restarts < 0 or samples_per_axis < 1 or tol <= 0:
        raise ValueError("restarts must be >= 0, samples_per_axis >= 1 and tol > 0")
    upper = coeff_l1(f)
    M = grid_order or 2 * f.K
    limit = enumeration_cap() if cap is None else cap

    starts = []
    grid_norm = 0.0
    if grid_size(M, f.n) <= limit:
        grid_norm, exponents = grid_argmax(f, M, cap=limit)
        starts.append(np.exp(2j * np.pi * exponents / M))
    else:
        logger.debug("Omega_%d^%d exceeds the cap; torus search uses random starts only", M, f.n)
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        starts.append(np.exp(2j * np.pi * rng.uniform(0.0, 1.0, f.n)))
    if not starts:
        raise CapExceededError("no start points: grid above the cap and restarts=0")

    if f.n == 0 or f.is_zero:
        value = abs(f.coefficient(())) if f.n == 0 else 0.0
        return NormReport(grid_norm, M, value, upper, tuple(complex(x) for x in starts[0]), 0)

    ascent = _CoordinateAscent(f, samples_per_axis, tol)
    best_value, best_point, total_sweeps = -1.0, starts[0], 0
    for start in starts:
        value, point, sweeps = ascent.run(start)
        total_sweeps += sweeps
        if value > best_value:
            best_value, best_point = value, point
    lower = max(best_value, grid_norm)
    return NormReport(grid_norm, M, lower, upper, tuple(complex(x) for x in best_point), total_sweeps)
