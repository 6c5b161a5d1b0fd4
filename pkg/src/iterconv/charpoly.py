"""Characteristic polynomials and polynomial roots, without eigensolvers.

Coefficients are stored in descending powers: coeffs[k] multiplies
x**(degree-k). Characteristic polynomials come from the Faddeev-LeVerrier
trace recurrence; roots come from simultaneous Weierstrass (Durand-Kerner)
iteration, which is batched so Monte Carlo callers can push many
same-degree polynomials through at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import MAX_ORDER, as_matrix

__all__ = [
    "PENCIL_MAX_ORDER",
    "OrderTooLargeError",
    "NoConvergenceError",
    "ZeroLeadingError",
    "Polynomial",
    "RootSet",
    "char_poly",
    "pencil_char_poly",
    "roots",
    "spectral_radius",
    "durand_kerner_batch",
]

PENCIL_MAX_ORDER = 6

# Durand-Kerner controls: spiral start, relative update stop, sweep cap,
# and the residual level at which a stalled iteration still counts as found.
_DK_SPIRAL = 0.4 + 0.9j
_DK_TOL = 1e-13
_DK_MAX_SWEEPS = 1000
_DK_RESIDUAL_OK = 1e-8


class OrderTooLargeError(ValueError):
    pass


class ZeroLeadingError(ValueError):
    """The zero polynomial (or a zero leading coefficient) was passed where
    a proper polynomial is required."""


class NoConvergenceError(RuntimeError):
    """Root iteration hit the sweep cap with a residual above the acceptance
    level. Callers may fall back to the half-plane criterion route."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(
            f"root iteration stalled with residual {residual:.3e}"
        )


class Polynomial:
    """Complex-coefficient polynomial in one variable, descending powers.

    Exact leading zeros are trimmed on construction; the zero polynomial is
    kept as a single zero coefficient with degree 0.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.array(coeffs, dtype=complex))
        if c.ndim != 1:
            raise ValueError("coefficients must form a 1-d sequence")
        if c.size == 0:
            raise ValueError("need at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        nz = np.nonzero(c)[0]
        self.coeffs = c[nz[0] :] if nz.size else c[-1:]

    @classmethod
    def from_roots(cls, root_list, leading=1.0) -> "Polynomial":
        """Build leading * prod(x - r) by coefficient convolution."""
        c = np.atleast_1d(np.asarray(leading, dtype=complex))
        for r in np.atleast_1d(np.asarray(root_list, dtype=complex)):
            c = np.convolve(c, [1.0, -r])
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, x):
        return np.polyval(self.coeffs, x)

    def monic(self) -> "Polynomial":
        """Divide by the leading coefficient; the new leading entry is an
        exact 1 (not a rounded quotient)."""
        lead = self.coeffs[0]
        if lead == 0:
            raise ZeroLeadingError("cannot normalize the zero polynomial")
        with np.errstate(over="ignore", invalid="ignore"):
            scaled = self.coeffs[1:] / lead
        if not np.all(np.isfinite(scaled)):
            raise ValueError(
                "normalization overflows: leading coefficient is too small "
                "relative to the rest"
            )
        return Polynomial(np.concatenate(([1.0], scaled)))

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()})"


@dataclass
class RootSet:
    """All roots of a polynomial plus the residual of the normalized
    polynomial at the returned roots (max over roots)."""

    roots: np.ndarray
    residual: float


def char_poly(m) -> Polynomial:
    """Monic characteristic polynomial det(tI - m).

    Faddeev-LeVerrier recurrence: only matrix products and traces, no
    factorizations. c_k = -trace(W_k)/k with W_1 = m and
    W_{k+1} = m (W_k + c_k I).
    """
    a = as_matrix(m)
    n = a.shape[0]
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    work = a.copy()
    eye = np.eye(n)
    for k in range(1, n + 1):
        c[k] = -np.trace(work) / k
        if k < n:
            work = a @ (work + c[k] * eye)
    return Polynomial(c)


def _permutation_sign(perm) -> int:
    # parity by cycle decomposition
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pencil_char_poly(w, v) -> Polynomial:
    """det(t*w + v) by brute-force permutation expansion.

    Each entry is the linear polynomial t*w_ij + v_ij; the determinant is
    the signed sum of products over all n! permutations. O(n!) on purpose:
    this is the independent cross-check for char_poly, capped at desk
    scale.
    """
    wm = as_matrix(w)
    vm = as_matrix(v)
    if wm.shape != vm.shape:
        raise ValueError("pencil terms must have the same order")
    n = wm.shape[0]
    if n > PENCIL_MAX_ORDER:
        raise OrderTooLargeError(
            f"permutation expansion supports order <= {PENCIL_MAX_ORDER}, got {n}"
        )
    acc = np.zeros(n + 1, dtype=complex)
    for perm in itertools.permutations(range(n)):
        term = np.ones(1, dtype=complex)
        for i, j in enumerate(perm):
            term = np.convolve(term, [wm[i, j], vm[i, j]])
        acc += _permutation_sign(perm) * term
    return Polynomial(acc)


def durand_kerner_batch(coeffs, tol=_DK_TOL, max_sweeps=_DK_MAX_SWEEPS):
    """Simultaneous root iteration on a batch of same-degree polynomials.

    Parameters
    ----------
    coeffs : (B, deg+1) complex array
        One polynomial per row, descending powers, nonzero leading column.

    Returns
    -------
    roots : (B, deg) complex array
    residual : (B,) float array, max |f_monic(root)| per row
    converged : (B,) bool array, update criterion met within the sweep cap

    Starting guesses lie on the spiral c*(0.4+0.9i)^k where c is the Cauchy
    bound 1 + max|monic coefficient|, so all roots start inside the initial
    radius. A row stops when its largest update falls below
    tol*(1 + max|root|). Rows that go non-finite are frozen and reported
    unconverged.
    """
    c = np.array(coeffs, dtype=complex)
    if c.ndim != 2 or c.shape[1] < 2:
        raise ValueError("expected a (batch, degree+1) array with degree >= 1")
    if np.any(c[:, 0] == 0):
        raise ZeroLeadingError("leading coefficients must be nonzero")
    c = c / c[:, :1]
    nbatch, m = c.shape
    deg = m - 1
    bound = 1.0 + np.max(np.abs(c[:, 1:]), axis=1)
    w = bound[:, None] * _DK_SPIRAL ** np.arange(deg)[None, :]
    diag_idx = np.arange(deg)
    active = np.arange(nbatch)
    converged = np.zeros(nbatch, dtype=bool)
    for _ in range(max_sweeps):
        ca = c[active]
        wa = w[active]
        f = np.ones_like(wa)
        for k in range(1, m):
            f = f * wa + ca[:, k, None]
        pairwise = wa[:, :, None] - wa[:, None, :]
        pairwise[:, diag_idx, diag_idx] = 1.0
        step = f / pairwise.prod(axis=2)
        wa = wa - step
        w[active] = wa
        finite = np.isfinite(wa).all(axis=1)
        done = finite & (
            np.max(np.abs(step), axis=1)
            < tol * (1.0 + np.max(np.abs(wa), axis=1))
        )
        converged[active[done]] = True
        active = active[finite & ~done]
        if active.size == 0:
            break
    f = np.ones_like(w)
    for k in range(1, m):
        f = f * w + c[:, k, None]
    residual = np.max(np.abs(f), axis=1)
    return w, residual, converged


def _strip_trailing_zeros(c: np.ndarray):
    t = 0
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
        t += 1
    return c, t


def roots(f: Polynomial) -> RootSet:
    """All complex roots of f via Durand-Kerner.

    Exact zero trailing coefficients are factored out first (they are exact
    roots at 0 and would otherwise make the iteration crawl on the zero
    cluster). Raises NoConvergenceError if the sweep cap is reached and the
    residual is still above the acceptance level.
    """
    if f.is_zero:
        raise ZeroLeadingError("the zero polynomial has no defined root set")
    if f.degree < 1:
        raise ValueError("degree >= 1 required")
    if f.degree > MAX_ORDER:
        raise OrderTooLargeError(
            f"root finding supports degree <= {MAX_ORDER}, got {f.degree}"
        )
    core, nzeros = _strip_trailing_zeros(f.coeffs)
    if len(core) == 1:
        return RootSet(np.zeros(nzeros, dtype=complex), 0.0)
    w, residual, converged = durand_kerner_batch(
        core[None, :], tol=_DK_TOL, max_sweeps=_DK_MAX_SWEEPS
    )
    accepted = bool(converged[0]) or bool(residual[0] <= _DK_RESIDUAL_OK)
    if not accepted:
        raise NoConvergenceError(float(residual[0]))
    all_roots = np.concatenate([w[0], np.zeros(nzeros, dtype=complex)])
    return RootSet(all_roots, float(residual[0]))


def spectral_radius(f: Polynomial) -> float:
    """Largest root modulus; 0 for a nonzero constant by convention."""
    if f.degree == 0:
        if f.coeffs[0] == 0:
            raise ZeroLeadingError("the zero polynomial has no spectral radius")
        return 0.0
    return float(np.max(np.abs(roots(f).roots)))
