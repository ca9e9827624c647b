"""
The certified constant C(d, K) = C1 * C2.

C1 comes from the moment lift (torus to Omega_2K). C2 bounds the Omega_2K
norm by the Omega_K norm: top-level inseparable parts are recovered from
pseudoprojection iterates through a modified Vandermonde system, peeled off,
and the cascade repeats one support level down. Summing the certified part
bounds over every class gives C2, since |f(sqrt(w))| is at most the sum of
|g(sqrt(w))| over the parts and each of those is at most ||g||_{Omega_K}.

The constant is one concrete instantiation of this chain, not an optimal one.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

import numpy as np

from remez_lab.algebra.cyclotomic import CycInt
from remez_lab.measures.moment_lift import step1_bound
from remez_lab.multipliers.inseparable import inseparable_decompose
from remez_lab.multipliers.pseudoprojection import SUPPORT_GROWTH, tau_of
from remez_lab.multipliers.reduction import reduce_at_maximizer
from remez_lab.multipliers.vandermonde import invert_modified_vandermonde
from remez_lab.polynomials.poly import Poly

logger = logging.getLogger(__name__)

MAX_CERTIFIED_DEGREE = 6
MIN_CERTIFIED_K = 3
MAX_CERTIFIED_K = 7
PRECISION_RESIDUAL_TOL = 1e-6
PRECISIONS = ("double", "extended")


@dataclass(frozen=True)
class LevelCertificate:
    ell: int
    taus: Tuple[CycInt, ...]
    c_values: Tuple[complex, ...]
    eta_norms: Tuple[float, ...]
    a_values: Tuple[float, ...]
    cascade: float
    residual: float

    @property
    def J(self) -> int:
        return len(self.taus)

    @property
    def sound(self) -> bool:
        return self.residual <= PRECISION_RESIDUAL_TOL

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "J": self.J,
            "taus": [t.to_dict() for t in self.taus],
            "c_values": [{"re": c.real, "im": c.imag} for c in self.c_values],
            "eta_norms": list(self.eta_norms),
            "a_values": list(self.a_values),
            "D": self.cascade,
            "residual": self.residual,
            "sound": self.sound,
        }


@dataclass(frozen=True)
class Certificate:
    d: int
    K: int
    levels: Tuple[LevelCertificate, ...]
    c1: float
    precision: str = "double"

    @property
    def sound(self) -> bool:
        return all(level.sound for level in self.levels)

    def level(self, ell: int) -> LevelCertificate:
        for level in self.levels:
            if level.ell == ell:
                return level
        raise KeyError(f"no level with support size {ell}")

    def multiplier(self, ell: int) -> float:
        """prod_{k > ell} (1 + D_k): growth from peeling the higher levels."""
        return float(np.prod([1.0 + level.cascade for level in self.levels if level.ell > ell]))

    @property
    def c2(self) -> float:
        return float(sum(self.multiplier(level.ell) * sum(level.a_values) for level in self.levels))

    @property
    def C(self) -> float:
        return self.c1 * self.c2

    def class_bound(self, ell: int, tau: CycInt) -> float:
        """Certified factor bounding ||g_(ell, tau)||_{Omega_K} by ||f||_{Omega_K}."""
        level = self.level(ell)
        for tau_j, a_j in zip(level.taus, level.a_values):
            if tau_j == tau:
                return a_j * self.multiplier(ell)
        raise KeyError(f"tau is not among the classes of support size {ell}")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "K": self.K,
            "precision": self.precision,
            "C1": self.c1,
            "C2": self.c2,
            "C": self.C,
            "sound": self.sound,
            "levels": [level.to_dict() for level in self.levels],
        }


def level_multisets(ell: int, d: int, K: int) -> List[Tuple[int, ...]]:
    """Multisets of size ell from {1, ..., K-1} with sum <= d."""
    return [m for m in combinations_with_replacement(range(1, K), ell) if sum(m) <= d]


def distinct_taus(multisets: Sequence[Sequence[int]], K: int) -> List[CycInt]:
    seen: Dict[CycInt, None] = {}
    for degrees in multisets:
        seen.setdefault(tau_of(degrees, K), None)
    return list(seen)


def build_level(ell: int, taus: Sequence[CycInt], precision: str = "double") -> LevelCertificate:
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision!r}")
    system = invert_modified_vandermonde(taus, extended=precision == "extended")
    growth = SUPPORT_GROWTH ** (len(taus) * ell)
    eta_norms = np.abs(system.inverse).sum(axis=1)
    # l1 norm of 1^T V^{-1}: the weights recovering the whole level
    level_weights = float(np.abs(system.inverse.sum(axis=0)).sum())
    return LevelCertificate(
        ell=ell,
        taus=tuple(taus),
        c_values=tuple(complex(c) for c in system.c_values),
        eta_norms=tuple(float(x) for x in eta_norms),
        a_values=tuple(float(x) * growth for x in eta_norms),
        cascade=level_weights * growth,
        residual=system.residual,
    )


def _finish(certificate: Certificate) -> Certificate:
    if not certificate.sound:
        worst = max(level.residual for level in certificate.levels)
        logger.warning(
            "Certificate for d=%d K=%d is unsound: Vandermonde residual %.3e above %.0e",
            certificate.d,
            certificate.K,
            worst,
            PRECISION_RESIDUAL_TOL,
        )
    return certificate


@lru_cache(maxsize=64)
def certified_constant(d: int, K: int, precision: str = "double") -> Certificate:
    """Certificate over every tau class realizable with degree <= d."""
    if not 0 <= d <= MAX_CERTIFIED_DEGREE:
        raise ValueError(f"certified constants are computed for 0 <= d <= {MAX_CERTIFIED_DEGREE}, got {d}")
    if not MIN_CERTIFIED_K <= K <= MAX_CERTIFIED_K:
        raise ValueError(f"certified constants are computed for {MIN_CERTIFIED_K} <= K <= {MAX_CERTIFIED_K}, got {K}")
    levels = tuple(build_level(ell, distinct_taus(level_multisets(ell, d, K), K), precision) for ell in range(d + 1))
    certificate = Certificate(d=d, K=K, levels=levels, c1=step1_bound(d, K), precision=precision)
    logger.info("Built certificate d=%d K=%d: C1=%.6g C2=%.6g C=%.6g", d, K, certificate.c1, certificate.c2, certificate.C)
    return _finish(certificate)


def instance_certificate(f: Poly, precision: str = "double") -> Certificate:
    """The same cascade restricted to the tau classes present in f."""
    if f.K < MIN_CERTIFIED_K:
        raise ValueError(f"instance certificates need K >= {MIN_CERTIFIED_K}, got {f.K}")
    by_level: Dict[int, List[CycInt]] = {}
    for cls in inseparable_decompose(f):
        by_level.setdefault(cls.support_size, []).append(cls.tau)
    levels = tuple(build_level(ell, by_level[ell], precision) for ell in sorted(by_level))
    certificate = Certificate(d=f.degree, K=f.K, levels=levels, c1=step1_bound(f.degree, f.K), precision=precision)
    return _finish(certificate)


def instance_bound(f: Poly, precision: str = "double", cap: int = None) -> float:
    """
    C1(deg f, K) times the instance C2 of the selector-reduced polynomial g.
    Zero for the zero polynomial.
    """
    reduction = reduce_at_maximizer(f, cap=cap)
    c2 = instance_certificate(reduction.g, precision).c2
    return step1_bound(f.degree, f.K) * c2


def projection_bound(f: Poly, S, precision: str = "double") -> float:
    """
    Sum of the instance class bounds of the classes of f that meet S.

    A class that S only partly covers is first bounded on the torus, so its
    class bound picks up the instance constant C1 * C2 as an extra factor.
    """
    certificate = instance_certificate(f, precision)
    chosen = {tuple(int(a) for a in alpha) for alpha in S}
    total = 0.0
    for cls in inseparable_decompose(f):
        if not chosen.intersection(cls.members):
            continue
        bound = certificate.class_bound(cls.support_size, cls.tau)
        if not chosen.issuperset(cls.members):
            bound *= certificate.C
        total += bound
    return float(total)
