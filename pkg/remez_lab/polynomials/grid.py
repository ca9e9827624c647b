"""
Mixed-radix enumeration of the grids Omega_M^n.

A grid point is identified with its exponent vector e in {0, ..., M-1}^n,
standing for (w_M^{e_1}, ..., w_M^{e_n}). Flat indices follow lexicographic
order of e.
"""

from typing import Iterator, Optional, Tuple

import numpy as np

from remez_lab.config import check_cap

# rows x terms budget for one evaluation chunk
_CHUNK_BUDGET = 2_000_000


def grid_size(M: int, n: int) -> int:
    return int(M) ** int(n)


def grid_exponents(M: int, n: int, start: int, stop: int) -> np.ndarray:
    """Exponent vectors for flat indices start..stop-1, shape (stop-start, n)."""
    if n == 0:
        return np.zeros((stop - start, 0), dtype=np.int64)
    flat = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((flat.shape[0], n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        digits[:, j] = flat % M
        flat //= M
    return digits


def chunk_rows(num_terms: int) -> int:
    return max(1, _CHUNK_BUDGET // max(num_terms, 1))


def iter_grid(M: int, n: int, rows: int, cap: Optional[int] = None) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (start index, exponent block) pairs covering Omega_M^n."""
    total = grid_size(M, n)
    check_cap(total, cap, what=f"Omega_{M}^{n}")
    for start in range(0, total, rows):
        stop = min(start + rows, total)
        yield start, grid_exponents(M, n, start, stop)
