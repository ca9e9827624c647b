"""
Reduction of the Omega_2K^n maximum to a single sqrt(w) evaluation.

Write the grid maximizer as z*_j = w_j y*_j with w_j in Omega_K and
y*_j in {1, sqrt(w)}. Rotating f by w and fixing the variables with y*_j = 1
leaves a polynomial g in the remaining m variables with
|g(sqrt(w), ..., sqrt(w))| = ||f||_{Omega_2K^n} and ||g||_{Omega_K^m} <= ||f||_{Omega_K^n}.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from remez_lab.norms.norm_oracle import grid_argmax
from remez_lab.polynomials.poly import MultiIndex, Poly, evaluate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectorReduction:
    g: Poly
    exponents: Tuple[int, ...]
    w_exponents: Tuple[int, ...]
    S: Tuple[int, ...]
    norm_2k: float

    @property
    def m(self) -> int:
        return len(self.S)

    @property
    def K(self) -> int:
        return self.g.K

    @property
    def y_star(self) -> Tuple[complex, ...]:
        half = cmath.exp(1j * cmath.pi / self.K)
        return tuple(half if e % 2 else 1 + 0j for e in self.exponents)

    @property
    def z_star(self) -> Tuple[complex, ...]:
        return tuple(cmath.exp(1j * cmath.pi * e / self.K) for e in self.exponents)

    def sqrt_omega_value(self) -> complex:
        point = [cmath.exp(1j * cmath.pi / self.K)] * self.m
        return evaluate(self.g, point)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "S": list(self.S),
            "maximizer_exponents": list(self.exponents),
            "w_exponents": list(self.w_exponents),
            "y_star": [{"re": y.real, "im": y.imag} for y in self.y_star],
            "norm_2k": self.norm_2k,
            "g_at_sqrt_omega": abs(self.sqrt_omega_value()),
        }


def reduce_at_maximizer(f: Poly, cap: Optional[int] = None) -> SelectorReduction:
    K = f.K
    norm_2k, exponents = grid_argmax(f, 2 * K, cap=cap)
    exponents = tuple(int(e) for e in exponents)
    # w_2K^{2q} = w_K^q
    w_exponents = tuple(e // 2 for e in exponents)
    S = tuple(j for j, e in enumerate(exponents) if e % 2)

    terms: Dict[MultiIndex, complex] = {}
    for alpha, coeff in f.items():
        phase = sum(q * a for q, a in zip(w_exponents, alpha)) % K
        key = tuple(alpha[j] for j in S)
        terms[key] = terms.get(key, 0j) + coeff * cmath.exp(2j * cmath.pi * phase / K)
    g = Poly(len(S), K, terms)
    logger.debug("Selector reduction: n=%d -> m=%d, ||f||_2K=%.6g", f.n, len(S), norm_2k)
    return SelectorReduction(g=g, exponents=exponents, w_exponents=w_exponents, S=S, norm_2k=float(norm_2k))
