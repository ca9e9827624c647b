import numpy as np
import pytest

from remez_lab.exceptions import CapExceededError
from remez_lab.polynomials.grid import chunk_rows, grid_exponents, grid_size, iter_grid


def test_lexicographic_order():
    exps = grid_exponents(3, 2, 0, grid_size(3, 2))
    assert exps.tolist()[:4] == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert exps.tolist()[-1] == [2, 2]


def test_partial_range():
    np.testing.assert_array_equal(grid_exponents(4, 3, 5, 7), [[0, 1, 1], [0, 1, 2]])


def test_zero_variables_is_one_point():
    blocks = list(iter_grid(5, 0, rows=10))
    assert len(blocks) == 1
    assert blocks[0][1].shape == (1, 0)


def test_blocks_cover_grid():
    blocks = list(iter_grid(3, 3, rows=4))
    stacked = np.vstack([block for _, block in blocks])
    assert [start for start, _ in blocks] == [0, 4, 8, 12, 16, 20, 24]
    np.testing.assert_array_equal(stacked, grid_exponents(3, 3, 0, 27))


def test_cap_enforced():
    with pytest.raises(CapExceededError):
        list(iter_grid(6, 4, rows=100, cap=1000))


def test_grid_size_and_chunks():
    assert grid_size(6, 0) == 1
    assert grid_size(3, 4) == 81
    assert chunk_rows(0) >= 1
