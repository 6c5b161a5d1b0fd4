import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from iterconv.linalg import (
    MAX_ORDER,
    Slae,
    ZeroDiagonalError,
    as_matrix,
    gs_iteration_matrix,
    jacobi_iteration_matrix,
    split,
)


def square(n):
    return hnp.arrays(
        np.float64,
        (n, n),
        elements=st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
    )


class TestAsMatrix:
    def test_accepts_nested_lists(self):
        m = as_matrix([[1, 2], [3, 4]])
        assert m.dtype == complex
        assert m.shape == (2, 2)
        assert np.array_equal(m, np.array([[1, 2], [3, 4]], dtype=complex))

    def test_keeps_complex_entries(self):
        m = as_matrix([[1 + 2j, 0], [0, 1]])
        assert m[0, 0] == 1 + 2j

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            as_matrix([[1, 2, 3], [4, 5, 6]])

    def test_rejects_vector(self):
        with pytest.raises(ValueError):
            as_matrix([1, 2, 3])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            as_matrix(np.zeros((0, 0)))

    def test_rejects_order_beyond_cap(self):
        with pytest.raises(ValueError, match="exceeds"):
            as_matrix(np.eye(MAX_ORDER + 1))

    def test_accepts_order_at_cap(self):
        assert as_matrix(np.eye(MAX_ORDER)).shape == (MAX_ORDER, MAX_ORDER)

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ValueError, match="finite"):
            as_matrix([[np.nan, 0], [0, 1]])
        with pytest.raises(ValueError, match="finite"):
            as_matrix([[1, np.inf], [0, 1]])


class TestSlae:
    def test_basic(self):
        s = Slae([[2, 1], [1, 2]], [3, 3])
        assert s.n == 2
        assert s.rhs.dtype == complex

    def test_rhs_length_mismatch(self):
        with pytest.raises(ValueError, match="rhs"):
            Slae([[2, 1], [1, 2]], [3, 3, 3])

    def test_rhs_must_be_finite(self):
        with pytest.raises(ValueError):
            Slae([[2, 1], [1, 2]], [np.nan, 0])


class TestSplit:
    def test_parts_are_strictly_triangular(self):
        s = split([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert np.all(np.triu(s.lower) == 0)
        assert np.all(np.tril(s.upper) == 0)
        assert np.all(s.diag == np.diag([1, 5, 9]))

    @given(st.integers(1, 6).flatmap(square))
    def test_round_trip_is_bit_exact(self, m):
        s = split(m)
        total = s.lower + s.diag + s.upper
        assert np.array_equal(total, as_matrix(m))

    def test_complex_round_trip(self):
        m = np.array([[1 + 1j, 2 - 1j], [3j, 4]])
        s = split(m)
        assert np.array_equal(s.lower + s.diag + s.upper, m)


class TestJacobiIterationMatrix:
    def test_two_by_two(self):
        # -D^-1 (L+R) for [[2,1],[1,2]]: off-diagonal entries are -1/2
        got = jacobi_iteration_matrix([[2, 1], [1, 2]])
        assert np.array_equal(got, np.array([[0, -0.5], [-0.5, 0]], dtype=complex))

    def test_diagonal_exactly_zero(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            m = rng.uniform(-9, 9, (4, 4))
            np.fill_diagonal(m, rng.uniform(0.5, 2, 4))
            got = jacobi_iteration_matrix(m)
            assert np.all(np.diag(got) == 0)

    def test_zero_diagonal_raises_with_index(self):
        with pytest.raises(ZeroDiagonalError) as exc:
            jacobi_iteration_matrix([[1, 2], [3, 0]])
        assert exc.value.index == 1

    def test_matches_dense_formula(self):
        rng = np.random.default_rng(11)
        m = rng.uniform(-5, 5, (5, 5)) + 1j * rng.uniform(-5, 5, (5, 5))
        d = np.diag(np.diag(m))
        off = m - d
        want = -np.linalg.solve(d, off)
        assert np.allclose(jacobi_iteration_matrix(m), want, atol=1e-13)


class TestGsIterationMatrix:
    def test_two_by_two(self):
        # -(L+D)^-1 R for [[2,1],[1,2]] worked by hand
        got = gs_iteration_matrix([[2, 1], [1, 2]])
        assert np.array_equal(got, np.array([[0, -0.5], [0, 0.25]], dtype=complex))

    def test_first_column_exactly_zero(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = rng.uniform(-9, 9, (5, 5))
            np.fill_diagonal(m, rng.uniform(0.5, 2, 5))
            got = gs_iteration_matrix(m)
            assert np.all(got[:, 0] == 0)

    def test_zero_diagonal_raises(self):
        with pytest.raises(ZeroDiagonalError) as exc:
            gs_iteration_matrix([[0, 2], [3, 1]])
        assert exc.value.index == 0

    def test_matches_dense_solve(self):
        rng = np.random.default_rng(13)
        for n in (2, 3, 5):
            m = rng.uniform(-5, 5, (n, n)) + 1j * rng.uniform(-5, 5, (n, n))
            while np.any(np.diag(m) == 0):
                m = rng.uniform(-5, 5, (n, n))
            ld = np.tril(m)
            r = np.triu(m, 1)
            want = -np.linalg.solve(ld, r)
            assert np.allclose(gs_iteration_matrix(m), want, atol=1e-12)

    @settings(max_examples=40)
    @given(st.integers(2, 5).flatmap(square))
    def test_zero_always_an_eigenvalue(self, m):
        np.fill_diagonal(m, np.abs(np.diag(m)) + 1.0)
        got = gs_iteration_matrix(m)
        # singular because the first column is identically zero
        assert abs(np.linalg.det(got)) == 0.0
