"""
Sparse analytic polynomials on the polytorus with bounded individual degree.
"""

from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from remez_lab.exceptions import DimensionMismatchError, InvalidMultiIndexError

MultiIndex = Tuple[int, ...]
TermSource = Union[Mapping[Sequence[int], complex], Iterable[Tuple[Sequence[int], complex]]]


def total_degree(alpha: Sequence[int]) -> int:
    return int(sum(alpha))


def support(alpha: Sequence[int]) -> Tuple[int, ...]:
    return tuple(j for j, a in enumerate(alpha) if a != 0)


def support_size(alpha: Sequence[int]) -> int:
    return sum(1 for a in alpha if a != 0)


def validate_multi_index(alpha: Sequence[int], n: int, K: int) -> MultiIndex:
    """Return alpha as a tuple of ints after checking length and entry range."""
    try:
        entries = tuple(int(a) for a in alpha)
    except (TypeError, ValueError) as e:
        raise InvalidMultiIndexError(f"multi-index {alpha!r} is not a sequence of integers") from e
    if len(entries) != n:
        raise InvalidMultiIndexError(f"multi-index {entries} has length {len(entries)}, expected {n}")
    for a in entries:
        if a < 0 or a > K - 1:
            raise InvalidMultiIndexError(f"multi-index {entries} has entry {a} outside 0..{K - 1}")
    return entries


class Poly:
    """
    Immutable map multi-index -> complex coefficient over n variables.

    Every exponent lies in {0, ..., K-1}; only nonzero coefficients are
    stored and terms iterate in lexicographic order of their multi-index.
    """

    __slots__ = ("_n", "_K", "_terms", "_alphas", "_coeffs")

    def __init__(self, n: int, K: int, terms: TermSource = ()):
        if n < 0:
            raise ValueError(f"variable count must be nonnegative, got {n}")
        if K < 2:
            raise ValueError(f"modulus K must be at least 2, got {K}")
        self._n = int(n)
        self._K = int(K)

        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[MultiIndex, complex] = {}
        for alpha, coeff in items:
            key = validate_multi_index(alpha, self._n, self._K)
            merged[key] = merged.get(key, 0j) + complex(coeff)
        self._terms = {alpha: merged[alpha] for alpha in sorted(merged) if merged[alpha] != 0}

        if self._terms:
            alphas = np.array(list(self._terms), dtype=np.int64).reshape(len(self._terms), self._n)
        else:
            alphas = np.zeros((0, self._n), dtype=np.int64)
        coeffs = np.array(list(self._terms.values()), dtype=np.complex128)
        alphas.flags.writeable = False
        coeffs.flags.writeable = False
        self._alphas = alphas
        self._coeffs = coeffs

    @classmethod
    def zero(cls, n: int, K: int) -> "Poly":
        return cls(n, K)

    @classmethod
    def constant(cls, n: int, K: int, value: complex) -> "Poly":
        return cls(n, K, {(0,) * n: value})

    @classmethod
    def monomial(cls, n: int, K: int, alpha: Sequence[int], coeff: complex = 1.0) -> "Poly":
        return cls(n, K, {tuple(alpha): coeff})

    @property
    def n(self) -> int:
        return self._n

    @property
    def K(self) -> int:
        return self._K

    @property
    def terms(self) -> Mapping[MultiIndex, complex]:
        return MappingProxyType(self._terms)

    @property
    def alphas(self) -> np.ndarray:
        """Read-only (terms x n) exponent matrix in term order."""
        return self._alphas

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient vector in term order."""
        return self._coeffs

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        return max((total_degree(a) for a in self._terms), default=0)

    @property
    def max_support_size(self) -> Optional[int]:
        """Largest support size among the terms, None for the zero polynomial."""
        return max((support_size(a) for a in self._terms), default=None)

    def coefficient(self, alpha: Sequence[int]) -> complex:
        return self._terms.get(tuple(alpha), 0j)

    def items(self) -> Iterator[Tuple[MultiIndex, complex]]:
        return iter(self._terms.items())

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, alpha: object) -> bool:
        return alpha in self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._n == other._n and self._K == other._K and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, self._K, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"Poly(n={self._n}, K={self._K}, terms={len(self._terms)}, degree={self.degree})"

    def _check_compatible(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if (self._n, self._K) != (other._n, other._K):
            raise DimensionMismatchError(
                f"cannot combine polynomials with (n, K)=({self._n}, {self._K}) and ({other._n}, {other._K})"
            )

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        return Poly(self._n, self._K, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Poly":
        return self.scale(-1.0)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, factor: complex) -> "Poly":
        return Poly(self._n, self._K, {a: c * factor for a, c in self._terms.items()})

    def restrict(self, keep: Callable[[MultiIndex], bool]) -> "Poly":
        """Keep the terms whose multi-index satisfies `keep`."""
        return Poly(self._n, self._K, {a: c for a, c in self._terms.items() if keep(a)})

    def map_coefficients(self, fn: Callable[[MultiIndex, complex], complex]) -> "Poly":
        return Poly(self._n, self._K, {a: fn(a, c) for a, c in self._terms.items()})

    def chop(self, atol: float) -> "Poly":
        """Drop terms whose coefficient modulus is at most atol."""
        return Poly(self._n, self._K, {a: c for a, c in self._terms.items() if abs(c) > atol})


def evaluate(f: Poly, z: Sequence[complex]) -> complex:
    """Value of f at the point z of C^n."""
    point = np.asarray(z, dtype=np.complex128).reshape(-1)
    if point.shape[0] != f.n:
        raise DimensionMismatchError(f"point has {point.shape[0]} coordinates, polynomial has {f.n} variables")
    if f.is_zero:
        return 0j
    monomials = np.prod(np.power(point[np.newaxis, :], f.alphas), axis=1)
    return complex(monomials @ f.coeffs)


def evaluate_at_exponents(f: Poly, exponents: np.ndarray, M: int, radius: float = 1.0) -> np.ndarray:
    """
    Values of f at the points (radius * w_M^{e_1}, ..., radius * w_M^{e_n})
    for each row e of `exponents`. Phases are reduced mod M exactly.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    if exponents.ndim == 1:
        exponents = exponents.reshape(1, -1)
    if exponents.shape[1] != f.n:
        raise DimensionMismatchError(f"exponent rows have {exponents.shape[1]} entries, polynomial has {f.n} variables")
    if f.is_zero:
        return np.zeros(exponents.shape[0], dtype=np.complex128)
    roots = np.exp(2j * np.pi * np.arange(M) / M)
    coeffs = f.coeffs
    if radius != 1.0:
        coeffs = coeffs * radius ** f.alphas.sum(axis=1)
    phases = (exponents @ f.alphas.T) % M
    return roots[phases] @ coeffs


def part_homogeneous(f: Poly, k: int) -> Poly:
    """The k-homogeneous part of f (terms of total degree k)."""
    return f.restrict(lambda alpha: total_degree(alpha) == k)


def part_support(f: Poly, ell: int) -> Poly:
    """The part of f made of monomials with support size ell."""
    return f.restrict(lambda alpha: support_size(alpha) == ell)


def part_S(f: Poly, S: Iterable[Sequence[int]]) -> Poly:
    """The S-part of f: terms whose multi-index lies in S."""
    keep = {tuple(int(a) for a in alpha) for alpha in S}
    return f.restrict(lambda alpha: alpha in keep)


def sum_polys(parts: Iterable[Poly], n: int, K: int) -> Poly:
    total = Poly.zero(n, K)
    for part in parts:
        total = total + part
    return total
