"""Dense small-matrix plumbing for the two classical relaxation methods.

Matrices are plain numpy arrays with complex dtype; real input is widened to
complex with zero imaginary part so one code path serves both. Order is
capped at MAX_ORDER because everything downstream (permutation oracles,
trace recurrences) is meant for small systems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_ORDER",
    "ZeroDiagonalError",
    "Slae",
    "Splitting",
    "as_matrix",
    "split",
    "jacobi_iteration_matrix",
    "gs_iteration_matrix",
]

MAX_ORDER = 12


class ZeroDiagonalError(ValueError):
    """A diagonal entry (or the diagonal product) is exactly zero.

    Both iteration matrices divide by the diagonal, so the methods are
    undefined. The test is exact: near-zero diagonals are legal and simply
    produce large iteration-matrix entries.
    """

    def __init__(self, index: int | None = None):
        self.index = index
        if index is None:
            msg = "diagonal product is exactly zero"
        else:
            msg = f"diagonal entry a[{index},{index}] is exactly zero"
        super().__init__(msg)


def as_matrix(a) -> np.ndarray:
    """Coerce input to a square complex matrix and validate it.

    Accepts anything array-like (nested lists, real or complex arrays).
    Raises ValueError for non-square shapes, non-finite entries, or order
    beyond MAX_ORDER.
    """
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n < 1:
        raise ValueError("empty matrix")
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


@dataclass
class Slae:
    """A square linear system  a . x = rhs."""

    a: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.a = as_matrix(self.a)
        rhs = np.atleast_1d(np.array(self.rhs, dtype=complex))
        if rhs.shape != (self.a.shape[0],):
            raise ValueError(
                f"rhs has shape {rhs.shape}, expected ({self.a.shape[0]},)"
            )
        if not np.all(np.isfinite(rhs)):
            raise ValueError("rhs entries must be finite")
        self.rhs = rhs

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass
class Splitting:
    """Additive triangular splitting: lower + diag + upper == source, exactly."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray


def split(a) -> Splitting:
    """Split a matrix into strict lower, diagonal, and strict upper parts.

    Pure entry placement, so the round trip lower + diag + upper is
    bit-exact.
    """
    m = as_matrix(a)
    return Splitting(
        lower=np.tril(m, -1),
        diag=np.diag(np.diag(m)),
        upper=np.triu(m, 1),
    )


def _diagonal_or_raise(m: np.ndarray) -> np.ndarray:
    d = np.diag(m)
    zeros = np.nonzero(d == 0)[0]
    if zeros.size:
        raise ZeroDiagonalError(int(zeros[0]))
    return d


def jacobi_iteration_matrix(a) -> np.ndarray:
    """Error-propagation matrix of simultaneous displacements: -D^-1 (L+R).

    Row i is row i of the off-diagonal part scaled by -1/a[i,i]; the result
    has an exactly zero diagonal (hence zero trace).
    """
    m = as_matrix(a)
    d = _diagonal_or_raise(m)
    out = -m / d[:, None]
    np.fill_diagonal(out, 0.0)
    return out


def gs_iteration_matrix(a) -> np.ndarray:
    """Error-propagation matrix of successive displacements: -(L+D)^-1 R.

    Computed by forward substitution on each column of R. The first column
    of R is zero and stays exactly zero through the substitution, so 0 is
    always an eigenvalue of the result.
    """
    m = as_matrix(a)
    d = _diagonal_or_raise(m)
    n = m.shape[0]
    out = np.zeros_like(m)
    upper = np.triu(m, 1)
    for i in range(n):
        acc = -upper[i]
        if i:
            acc = acc - m[i, :i] @ out[:i]
        out[i] = acc / d[i]
    return out
