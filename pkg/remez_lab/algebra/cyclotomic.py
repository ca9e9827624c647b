"""
Exact arithmetic in the ring of cyclotomic integers Z[w_m].

Elements are stored as integer coefficient vectors (ascending powers of the
primitive root w_m = exp(2 pi i / m)) reduced modulo the m-th cyclotomic
polynomial, so two elements are equal iff their coefficient vectors are.
"""

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from remez_lab.exceptions import OrderMismatchError


def _trim(poly: List[int]) -> List[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> List[int]:
    result = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            result[i + j] += a * b
    return result


def _poly_divmod(dividend: Sequence[int], divisor: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Divide by a monic integer polynomial; both given in ascending order."""
    if divisor[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(divisor) - 1
    remainder = list(dividend) + [0] * max(0, dd - len(dividend))
    quotient = [0] * max(len(remainder) - dd, 1)
    for i in range(len(remainder) - 1, dd - 1, -1):
        coeff = remainder[i]
        if coeff == 0:
            continue
        quotient[i - dd] = coeff
        for j in range(dd + 1):
            remainder[i - dd + j] -= coeff * divisor[j]
    return _trim(quotient), remainder[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError(f"cyclotomic polynomial needs m >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d:
            continue
        poly, remainder = _poly_divmod(poly, cyclotomic_polynomial(d))
        if any(remainder):
            raise ArithmeticError(f"x^{m} - 1 is not divisible by the {d}-th cyclotomic polynomial")
    return tuple(poly)


def ring_degree(order: int) -> int:
    """Degree of Z[w_order] over Z, i.e. Euler's phi of the order."""
    return len(cyclotomic_polynomial(order)) - 1


@dataclass(frozen=True)
class CycInt:
    """An element of Z[w_order] in canonical form."""

    order: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if len(self.coeffs) != ring_degree(self.order):
            raise ValueError(
                f"Z[w_{self.order}] elements need {ring_degree(self.order)} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coefficients(cls, order: int, coeffs: Sequence[int]) -> "CycInt":
        """Reduce an arbitrary integer polynomial in w_order to canonical form."""
        _, remainder = _poly_divmod([int(c) for c in coeffs] or [0], cyclotomic_polynomial(order))
        return cls(order, tuple(remainder))

    @classmethod
    def one(cls, order: int) -> "CycInt":
        return cls.from_coefficients(order, [1])

    @classmethod
    def zero(cls, order: int) -> "CycInt":
        return cls.from_coefficients(order, [0])

    @classmethod
    def root_power(cls, order: int, k: int) -> "CycInt":
        """The element w_order^k."""
        k %= order
        return cls.from_coefficients(order, [0] * k + [1])

    def _check_order(self, other: "CycInt") -> None:
        if not isinstance(other, CycInt):
            raise TypeError(f"expected CycInt, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(f"cannot combine elements of Z[w_{self.order}] and Z[w_{other.order}]")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check_order(other)
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycInt") -> "CycInt":
        return self + (-other)

    def __mul__(self, other: "CycInt") -> "CycInt":
        self._check_order(other)
        return CycInt.from_coefficients(self.order, _poly_mul(self.coeffs, other.coeffs))

    def __pow__(self, exponent: int) -> "CycInt":
        if exponent < 0:
            raise ValueError("cyclotomic integers only support nonnegative powers")
        result = CycInt.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_complex(self) -> complex:
        root = cmath.exp(2j * cmath.pi / self.order)
        value = 0j
        for c in reversed(self.coeffs):
            value = value * root + c
        return value

    def __complex__(self) -> complex:
        return self.to_complex()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}


def one_minus_root(k: int, K: int) -> CycInt:
    """The tau factor 1 - w_K^k as an element of Z[w_2K], with w_K = w_2K^2."""
    if K < 2:
        raise ValueError(f"modulus K must be at least 2, got {K}")
    if k % K == 0:
        raise ValueError(f"tau factors need k not divisible by K (k={k}, K={K})")
    order = 2 * K
    return CycInt.one(order) - CycInt.root_power(order, 2 * (k % K))


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_pow(a: CycInt, e: int) -> CycInt:
    return a**e


def cyc_eq(a: CycInt, b: CycInt) -> bool:
    """Exact equality; elements of different rings are rejected, not compared."""
    a._check_order(b)
    return a.coeffs == b.coeffs


def cyc_to_complex(a: CycInt) -> complex:
    return a.to_complex()
