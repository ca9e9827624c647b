"""
Inseparable parts: splitting a polynomial by (support size, exact tau).

Two monomials are inseparable when their support sizes agree and their tau
factors are equal in Z[w_2K]. Equality is decided exactly, never with a
floating-point tolerance.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import isprime

from remez_lab.algebra.cyclotomic import CycInt
from remez_lab.exceptions import (
    CertificateError,
    InvalidMultiIndexError,
    InvalidProjectionSetError,
    NonPrimeModulusError,
    UndefinedSupportError,
)
from remez_lab.multipliers.pseudoprojection import pseudoproject_iter, tau_of
from remez_lab.multipliers.vandermonde import invert_modified_vandermonde
from remez_lab.polynomials.poly import (
    MultiIndex,
    Poly,
    part_S,
    sum_polys,
    support_size,
    total_degree,
    validate_multi_index,
)

logger = logging.getLogger(__name__)

RECOVERY_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class InseparableClass:
    support_size: int
    tau: CycInt
    members: Tuple[MultiIndex, ...]
    zeta: complex
    part: Poly

    @property
    def K(self) -> int:
        return self.part.K

    @property
    def tau_value(self) -> complex:
        return self.tau.to_complex()

    @property
    def sigma_hat(self) -> Dict[int, int]:
        """k -> #{j : alpha_j in {k, K-k}} for the first member, 1 <= k <= K//2."""
        alpha = self.members[0]
        K = self.K
        return {k: sum(1 for a in alpha if a in (k, K - k)) for k in range(1, K // 2 + 1)}


def sqrt_omega_value(alpha: Sequence[int], K: int) -> complex:
    """The monomial z^alpha at z = (e^{i pi/K}, ..., e^{i pi/K})."""
    return cmath.exp(1j * cmath.pi * total_degree(alpha) / K)


def tau_key(alpha: Sequence[int], K: int) -> Tuple[int, CycInt]:
    return support_size(alpha), tau_of(alpha, K)


def inseparable_decompose(f: Poly) -> List[InseparableClass]:
    """Classes ordered by support size, then by their smallest member."""
    groups: Dict[Tuple[int, CycInt], List[MultiIndex]] = {}
    for alpha in f:
        groups.setdefault(tau_key(alpha, f.K), []).append(alpha)

    classes = []
    for (ell, tau), members in groups.items():
        part = part_S(f, members)
        classes.append(
            InseparableClass(
                support_size=ell,
                tau=tau,
                members=tuple(members),
                zeta=sqrt_omega_value(members[0], f.K),
                part=part,
            )
        )
    classes.sort(key=lambda c: (c.support_size, c.members[0]))
    return classes


def vandermonde_recover(f: Poly, ell: int = None, extended: bool = False) -> List[Poly]:
    """
    Recover the top-support inseparable parts g_(l, j) = sum_k eta_k^(j) D^k f
    from the iterates D^1 f, ..., D^J f. Parts come in the order of the
    top-level classes of inseparable_decompose.
    """
    top = f.max_support_size
    if top is None:
        raise UndefinedSupportError("the zero polynomial has no top support level")
    if ell is not None and ell != top:
        raise ValueError(f"support size {ell} is not the maximum support size {top} of f")

    classes = [c for c in inseparable_decompose(f) if c.support_size == top]
    system = invert_modified_vandermonde([c.tau for c in classes], extended=extended)
    if system.residual > RECOVERY_RESIDUAL_TOL:
        raise CertificateError(
            f"Vandermonde inversion residual {system.residual:.3e} above {RECOVERY_RESIDUAL_TOL} "
            f"at support size {top}"
        )
    iterates = [pseudoproject_iter(f, k) for k in range(1, len(classes) + 1)]
    parts = []
    for j in range(len(classes)):
        parts.append(sum_polys((D.scale(system.inverse[j, k]) for k, D in enumerate(iterates)), f.n, f.K))
    logger.debug("Recovered %d inseparable parts at support size %d", len(parts), top)
    return parts


def folded_degrees(alpha: Sequence[int], K: int) -> Tuple[int, ...]:
    return tuple(sorted(min(a, K - a) for a in alpha if a != 0))


def bijection_pattern_key(alpha: Sequence[int], K: int) -> Tuple[int, int, Tuple[int, ...]]:
    """(support size, |alpha| mod 2K, folded degree multiset)."""
    return support_size(alpha), total_degree(alpha) % (2 * K), folded_degrees(alpha, K)


def corollary_key(alpha: Sequence[int], K: int) -> Tuple[int, int, Tuple[int, ...]]:
    """(support size, |alpha|, folded degree multiset)."""
    return support_size(alpha), total_degree(alpha), folded_degrees(alpha, K)


def is_odd_prime(K: int) -> bool:
    return K >= 3 and bool(isprime(K))


def prime_inseparable(alpha: Sequence[int], beta: Sequence[int], K: int) -> bool:
    """
    Inseparability for odd prime K via equal support sizes, equal degrees
    mod 2K and a bijection of supports matching alpha_j to beta_pi(j) or
    K - beta_pi(j).
    """
    if not is_odd_prime(K):
        raise NonPrimeModulusError(f"the characterization needs an odd prime K, got {K}")
    if len(alpha) != len(beta):
        raise InvalidMultiIndexError(f"multi-indices of lengths {len(alpha)} and {len(beta)} are not comparable")
    a = validate_multi_index(alpha, len(alpha), K)
    b = validate_multi_index(beta, len(beta), K)
    return bijection_pattern_key(a, K) == bijection_pattern_key(b, K)


def class_pattern_findings(alphas: Iterable[Sequence[int]], K: int) -> Dict[str, int]:
    """
    Compare the exact (support, tau) partition of `alphas` with the partition
    by bijection_pattern_key. Counts pairs of keys that the two relations
    group differently; no primality requirement.
    """
    tau_to_pattern: Dict[Tuple[int, CycInt], set] = {}
    pattern_to_tau: Dict[Tuple, set] = {}
    count = 0
    for alpha in alphas:
        t = tau_key(alpha, K)
        p = bijection_pattern_key(alpha, K)
        tau_to_pattern.setdefault(t, set()).add(p)
        pattern_to_tau.setdefault(p, set()).add(t)
        count += 1
    return {
        "indices": count,
        "tau_classes": len(tau_to_pattern),
        "pattern_classes": len(pattern_to_tau),
        "tau_classes_split_by_pattern": sum(1 for ps in tau_to_pattern.values() if len(ps) > 1),
        "pattern_classes_split_by_tau": sum(1 for ts in pattern_to_tau.values() if len(ts) > 1),
    }


def bounded_projection(f: Poly, S: Iterable[Sequence[int]]) -> Poly:
    """
    The S-part of f for a set S that is one full class of f: all of S shares
    one exact (support, tau) key, or for odd prime K one corollary key, and
    every term of f with that key lies in S.
    """
    chosen = {validate_multi_index(alpha, f.n, f.K) for alpha in S}
    if not chosen:
        return Poly.zero(f.n, f.K)

    relations = [lambda a: tau_key(a, f.K)]
    if is_odd_prime(f.K):
        relations.append(lambda a: corollary_key(a, f.K))
    for key in relations:
        keys = {key(alpha) for alpha in chosen}
        if len(keys) != 1:
            continue
        shared = keys.pop()
        if all(alpha in chosen for alpha in f if key(alpha) == shared):
            return part_S(f, chosen)
    raise InvalidProjectionSetError(
        "S must be one full inseparable class of f (shared support size and tau, "
        "or for odd prime K shared support size, degree and folded degrees)"
    )
