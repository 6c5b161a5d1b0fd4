"""Shared test oracles, independent of the package's own numerics."""

import numpy as np
from scipy.optimize import linear_sum_assignment


def poly_from_roots(root_list):
    """Monic coefficient array (descending) built by numpy from given roots."""
    return np.atleast_1d(np.poly(np.asarray(root_list, dtype=complex)))


def match_roots(got, expected):
    """Best-pairing distance between two root multisets.

    Returns the largest pairwise distance under the optimal assignment, so a
    value below tol means the multisets agree to tol.
    """
    got = np.asarray(got, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    assert got.shape == expected.shape, (got.shape, expected.shape)
    if got.size == 0:
        return 0.0
    cost = np.abs(got[:, None] - expected[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def jury_cubic_inside(p, q):
    """Jury-table test for all roots of t^3 + p t + q inside the unit circle.

    Written straight from the classical table conditions for a real cubic,
    so it shares no algebra with the closed-form region under test:
      f(1) > 0,  -f(-1) > 0,  |q| < 1,  |p| < 1 - q^2.
    """
    return 1 + p + q > 0 and 1 + p - q > 0 and abs(q) < 1 and abs(p) < 1 - q * q


def eig_radius(m):
    """Spectral radius via numpy's eigensolver (not used by the package)."""
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(m, dtype=complex)))))


def random_system(rng, n, lo=-1.0, hi=1.0):
    """Random real matrix with the zero-diagonal null set resampled away."""
    m = rng.uniform(lo, hi, (n, n))
    while np.any(np.diag(m) == 0.0):
        m = rng.uniform(lo, hi, (n, n))
    return m


def random_complex_matrix(rng, n):
    m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    while np.any(np.diag(m) == 0.0):
        m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    return m
