"""
Seeded random polynomial generation.
"""

from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Tuple

import numpy as np

from remez_lab.polynomials.poly import MultiIndex, Poly

SCHEMES = ("dense-gaussian", "sparse-uniform", "unimodular")
DEFAULT_MAX_TERMS = 8


@lru_cache(maxsize=256)
def multi_indices(n: int, d: int, K: int) -> Tuple[MultiIndex, ...]:
    """All alpha in {0..K-1}^n with |alpha| <= d, lexicographically sorted."""
    found = []
    for ell in range(0, min(n, d) + 1):
        for positions in combinations(range(n), ell):
            for values in product(range(1, K), repeat=ell):
                if sum(values) > d:
                    continue
                alpha = [0] * n
                for j, v in zip(positions, values):
                    alpha[j] = v
                found.append(tuple(alpha))
    return tuple(sorted(found))


def random_poly(
    n: int, d: int, K: int, seed: int, scheme: str = "dense-gaussian", max_terms: Optional[int] = None
) -> Poly:
    """
    Deterministic random polynomial of total degree <= d and individual degree <= K-1.

    dense-gaussian fills every admissible multi-index with a complex gaussian;
    sparse-uniform draws a few multi-indices with coefficients uniform in the
    unit square; unimodular draws a few multi-indices with random phases.
    """
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    if K < 2:
        raise ValueError(f"modulus K must be at least 2, got {K}")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")

    rng = np.random.default_rng(seed)
    candidates = multi_indices(n, d, K)

    if scheme == "dense-gaussian":
        chosen = candidates
        coeffs = rng.standard_normal(len(chosen)) + 1j * rng.standard_normal(len(chosen))
    else:
        limit = min(len(candidates), max_terms or DEFAULT_MAX_TERMS)
        count = int(rng.integers(1, limit + 1))
        picks = rng.choice(len(candidates), size=count, replace=False)
        chosen = [candidates[i] for i in sorted(picks)]
        if scheme == "sparse-uniform":
            coeffs = rng.uniform(-1.0, 1.0, count) + 1j * rng.uniform(-1.0, 1.0, count)
        else:
            coeffs = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))

    return Poly(n, K, zip(chosen, coeffs))
