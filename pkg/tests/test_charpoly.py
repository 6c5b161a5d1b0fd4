import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import helpers
from iterconv import charpoly
from iterconv.charpoly import (
    PENCIL_MAX_ORDER,
    NoConvergenceError,
    OrderTooLargeError,
    Polynomial,
    ZeroLeadingError,
    char_poly,
    durand_kerner_batch,
    pencil_char_poly,
    roots,
    spectral_radius,
)
from iterconv.linalg import gs_iteration_matrix, jacobi_iteration_matrix, split

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


class TestPolynomial:
    def test_leading_zero_trimmed(self):
        f = Polynomial([0, 0, 1, 2])
        assert f.degree == 1
        assert np.array_equal(f.coeffs, np.array([1, 2], dtype=complex))

    def test_zero_polynomial(self):
        f = Polynomial([0, 0, 0])
        assert f.is_zero
        assert f.degree == 0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            Polynomial([])
        with pytest.raises(ValueError):
            Polynomial([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            Polynomial([1, np.nan])

    def test_call_is_horner(self):
        f = Polynomial([1, -3, 2])  # x^2 - 3x + 2
        assert f(1) == 0
        assert f(2) == 0
        assert f(0) == 2

    def test_from_roots(self):
        f = Polynomial.from_roots([1, 2])
        assert np.allclose(f.coeffs, [1, -3, 2])
        g = Polynomial.from_roots([1j, -1j], leading=2.0)
        assert np.allclose(g.coeffs, [2, 0, 2])

    def test_monic_leading_is_exact_one(self):
        f = Polynomial([3.7, 1.1, -0.3]).monic()
        assert f.coeffs[0] == 1.0 + 0.0j

    def test_monic_of_zero_raises(self):
        with pytest.raises(ZeroLeadingError):
            Polynomial([0.0]).monic()

    @given(st.lists(finite, min_size=1, max_size=9))
    def test_trim_and_monic_invariants(self, cs):
        f = Polynomial(cs)
        assert f.degree <= len(cs) - 1
        assert f.coeffs[0] != 0 or f.is_zero
        assert f(0) == f.coeffs[-1]
        if not f.is_zero:
            try:
                g = f.monic()
            except ValueError:
                # subnormal leading coefficient: normalization overflows
                # and says so instead of emitting infs
                assume(False)
            assert g.coeffs[0] == 1.0

    def test_monic_overflow_is_reported(self):
        with pytest.raises(ValueError, match="overflows"):
            Polynomial([5e-324, 1e3]).monic()


class TestCharPoly:
    def test_zero_matrix(self):
        f = char_poly(np.zeros((3, 3)))
        assert np.array_equal(f.coeffs, np.array([1, 0, 0, 0], dtype=complex))

    def test_identity(self):
        f = char_poly(np.eye(2))
        assert np.array_equal(f.coeffs, np.array([1, -2, 1], dtype=complex))

    def test_jacobi_of_symmetric_pair(self):
        f = char_poly(jacobi_iteration_matrix([[2, 1], [1, 2]]))
        assert np.array_equal(f.coeffs, np.array([1, 0, -0.25], dtype=complex))

    def test_matches_eig_oracle(self):
        rng = np.random.default_rng(21)
        for n in range(2, 7):
            for _ in range(10):
                m = helpers.random_complex_matrix(rng, n)
                got = char_poly(m).coeffs
                want = helpers.poly_from_roots(np.linalg.eigvals(m))
                scale = max(np.abs(want).max(), 1.0)
                assert np.abs(got - want).max() <= 1e-9 * scale

    def test_trace_free_input_gives_exact_zero_second_coefficient(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            m = helpers.random_system(rng, 4, -100, 100)
            f = char_poly(jacobi_iteration_matrix(m))
            assert f.coeffs[1] == 0

    def test_worked_three_by_three(self):
        # [[-8,6,-4],[-9,8,6],[4,-5,3]]: the Jacobi polynomial should be
        # t^3 + p t + q with p = -50/192 and q = 36/192
        m = [[-8, 6, -4], [-9, 8, 6], [4, -5, 3]]
        f = char_poly(jacobi_iteration_matrix(m))
        assert f.degree == 3
        assert f.coeffs[0] == 1
        assert f.coeffs[1] == 0
        assert abs(f.coeffs[2] - (-50 / 192)) <= 1e-15
        assert abs(f.coeffs[3] - 36 / 192) <= 1e-15


class TestPencil:
    def test_identity_pencil(self):
        f = pencil_char_poly(np.eye(2), -np.eye(2))
        assert np.array_equal(f.coeffs, np.array([1, -2, 1], dtype=complex))

    def test_jacobi_pencil_two_by_two(self):
        s = split([[2, 1], [1, 2]])
        f = pencil_char_poly(s.diag, s.lower + s.upper)
        assert np.array_equal(f.coeffs, np.array([4, 0, -1], dtype=complex))

    def test_gs_pencil_two_by_two(self):
        s = split([[2, 1], [1, 2]])
        f = pencil_char_poly(s.lower + s.diag, s.upper)
        assert np.array_equal(f.coeffs, np.array([4, -1, 0], dtype=complex))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            pencil_char_poly(np.eye(2), np.eye(3))

    def test_order_cap(self):
        with pytest.raises(OrderTooLargeError):
            pencil_char_poly(np.eye(PENCIL_MAX_ORDER + 1), np.eye(PENCIL_MAX_ORDER + 1))

    def test_agrees_with_trace_recurrence_jacobi(self):
        # det(tD + L + R) must equal det(D) * charpoly(-D^-1(L+R)) up to
        # roundoff, for real and complex input
        rng = np.random.default_rng(41)
        for n in (2, 3, 4, 5):
            for _ in range(8):
                m = helpers.random_complex_matrix(rng, n)
                s = split(m)
                lhs = pencil_char_poly(s.diag, s.lower + s.upper).coeffs
                det_d = np.prod(np.diag(m))
                rhs = char_poly(jacobi_iteration_matrix(m)).coeffs * det_d
                scale = max(np.abs(lhs).max(), np.abs(rhs).max(), 1.0)
                assert np.abs(lhs - rhs).max() <= 1e-9 * scale

    def test_agrees_with_trace_recurrence_gs(self):
        rng = np.random.default_rng(43)
        for n in (2, 3, 4):
            for _ in range(8):
                m = helpers.random_system(rng, n, -3, 3)
                s = split(m)
                lhs = pencil_char_poly(s.lower + s.diag, s.upper).coeffs
                det_ld = np.prod(np.diag(m))
                rhs = char_poly(gs_iteration_matrix(m)).coeffs * det_ld
                scale = max(np.abs(lhs).max(), np.abs(rhs).max(), 1.0)
                assert np.abs(lhs - rhs).max() <= 1e-9 * scale

    def test_gs_constant_coefficient_vanishes(self):
        # zero is an exact eigenvalue, so the constant term is pure
        # cancellation noise; the trace recurrence accumulates it at the
        # scale of the intermediate products, hence the norm^n factor
        rng = np.random.default_rng(47)
        for n in (3, 4, 5):
            for _ in range(30):
                m = helpers.random_system(rng, n, -100, 100)
                g = gs_iteration_matrix(m)
                c = char_poly(g).coeffs
                work_scale = max(1.0, np.abs(g).max()) ** n
                assert abs(c[-1]) <= 1e-12 * work_scale

    def test_gs_constant_coefficient_worked_example(self):
        c = char_poly(gs_iteration_matrix([[-8, 6, -4], [-9, 8, 6], [4, -5, 3]])).coeffs
        assert abs(c[-1]) <= 1e-12

    def test_gs_degree_after_factoring_zero_root(self):
        # factoring the guaranteed zero eigenvalue leaves degree <= n-1,
        # one below the Jacobi polynomial
        rng = np.random.default_rng(49)
        for n in (3, 4, 5):
            m = helpers.random_system(rng, n, -9, 9)
            rs = roots(char_poly(gs_iteration_matrix(m)))
            near_zero = np.abs(rs.roots) <= 1e-6
            assert np.count_nonzero(near_zero) >= 1
            assert np.count_nonzero(~near_zero) <= n - 1


class TestDurandKerner:
    def test_known_roots_across_degrees(self):
        rng = np.random.default_rng(51)
        for deg in range(1, 9):
            for _ in range(10):
                want = rng.uniform(-2, 2, deg) + 1j * rng.uniform(-2, 2, deg)
                c = helpers.poly_from_roots(want)
                got, residual, converged = durand_kerner_batch(c[None, :])
                assert converged.all()
                assert residual[0] <= 1e-8
                assert helpers.match_roots(got[0], want) <= 1e-9

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(53)
        polys = [
            helpers.poly_from_roots(rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4))
            for _ in range(6)
        ]
        batch, _, conv = durand_kerner_batch(np.array(polys))
        assert conv.all()
        for row, c in zip(batch, polys):
            single, _, _ = durand_kerner_batch(c[None, :])
            assert helpers.match_roots(row, single[0]) <= 1e-10

    def test_leading_scaling_is_irrelevant(self):
        c = np.array([[2.0, -6.0, 4.0]], dtype=complex)  # 2(x-1)(x-2)
        got, _, conv = durand_kerner_batch(c)
        assert conv.all()
        assert helpers.match_roots(got[0], [1, 2]) <= 1e-12

    def test_zero_leading_rejected(self):
        with pytest.raises(ZeroLeadingError):
            durand_kerner_batch(np.array([[0.0, 1.0, 1.0]]))

    def test_sweep_cap_reports_unconverged(self):
        c = helpers.poly_from_roots([0.3, -0.9, 1.4, 2.0 + 1j])
        _, residual, converged = durand_kerner_batch(c[None, :], max_sweeps=1)
        assert not converged[0]
        assert residual[0] > 1e-8


class TestRoots:
    def test_quadratic(self):
        rs = roots(Polynomial([1, 0, -1]))
        assert helpers.match_roots(np.sort_complex(rs.roots), [-1, 1]) <= 1e-12

    def test_trailing_zeros_become_exact_zero_roots(self):
        rs = roots(Polynomial([1, 1, 0, 0]))  # x^2 (x + 1)
        zero_count = int(np.sum(rs.roots == 0))
        assert zero_count == 2
        assert helpers.match_roots(rs.roots, [0, 0, -1]) <= 1e-12

    def test_pure_power(self):
        rs = roots(Polynomial([2, 0, 0, 0]))
        assert np.array_equal(rs.roots, np.zeros(3, dtype=complex))
        assert rs.residual == 0.0

    def test_degree_cap(self):
        with pytest.raises(OrderTooLargeError):
            roots(Polynomial([1.0] + [0.0] * 12 + [1.0]))

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroLeadingError):
            roots(Polynomial([0.0]))

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            roots(Polynomial([3.0]))

    def test_stalled_iteration_raises(self, monkeypatch):
        monkeypatch.setattr(charpoly, "_DK_MAX_SWEEPS", 1)
        f = Polynomial(helpers.poly_from_roots([0.5, -1.5, 2j, -0.25, 3.0]))
        with pytest.raises(NoConvergenceError) as exc:
            roots(f)
        assert exc.value.residual > 1e-8

    def test_random_round_trip(self):
        rng = np.random.default_rng(61)
        for _ in range(25):
            want = rng.uniform(-2, 2, 6) + 1j * rng.uniform(-2, 2, 6)
            f = Polynomial(helpers.poly_from_roots(want))
            assert helpers.match_roots(roots(f).roots, want) <= 1e-9


class TestSpectralRadius:
    def test_constant_is_zero(self):
        assert spectral_radius(Polynomial([5.0])) == 0.0

    def test_pure_power_is_zero(self):
        assert spectral_radius(Polynomial([1, 0, 0, 0])) == 0.0

    def test_unit_circle_cubic(self):
        assert abs(spectral_radius(Polynomial([1, 0, 0, -1])) - 1.0) <= 1e-12

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroLeadingError):
            spectral_radius(Polynomial([0.0]))

    def test_worked_gs_quadratic(self):
        # -192 t^2 - 130 t + 144: largest root modulus from the quadratic
        # formula is (130 + sqrt(130^2 + 4*192*144)) / 384
        want = (130 + math.sqrt(130 * 130 + 4 * 192 * 144)) / 384
        got = spectral_radius(Polynomial([-192, -130, 144]))
        assert abs(got - want) <= 1e-12 * want

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=6,
        )
    )
    def test_matches_known_root_moduli(self, rs):
        # clustered roots lose half the digits to conditioning, so only
        # well-separated configurations are in scope here
        arr = np.asarray(rs, dtype=complex)
        sep = np.abs(arr[:, None] - arr[None, :])
        np.fill_diagonal(sep, np.inf)
        assume(sep.min() >= 0.1)
        f = Polynomial.from_roots(arr)
        want = float(np.abs(arr).max())
        assert abs(spectral_radius(f) - want) <= 1e-8 * (1 + want)
