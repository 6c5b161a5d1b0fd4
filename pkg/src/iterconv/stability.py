"""Unit-disk root location without computing eigenvalues.

The question "are all roots of f strictly inside the unit circle" is mapped
to "are all roots of a transformed polynomial strictly in the left
half-plane" and settled there with the even-order leading principal minors
of an interleaved coefficient matrix (the Hurwitz determinants of a pair of
real polynomials). The substitution is

    lambda = (z + 1) / (z - 1),

so f of degree n becomes sum_k a_k (z+1)^(n-k) (z-1)^k. A second,
independent route (radius_verdict) answers the same question through the
root finder; the two cross-check each other in the Monte Carlo audit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import Polynomial, spectral_radius

__all__ = [
    "CONVERGES",
    "DIVERGES",
    "MARGINAL",
    "STABLE",
    "UNSTABLE",
    "MINOR_EPS_REL",
    "RADIUS_BAND",
    "ParityViolationError",
    "RealImagSplit",
    "HurwitzPair",
    "HurwitzMatrix",
    "ConvergenceVerdict",
    "mobius_disk_to_halfplane",
    "split_g_h",
    "parity_adjust",
    "hurwitz_matrix",
    "is_stable",
    "unit_disk_test",
    "radius_verdict",
]

CONVERGES = "converges"
DIVERGES = "diverges"
MARGINAL = "marginal"
STABLE = "stable"
UNSTABLE = "unstable"

# Relative tolerance for minor sign calls, and the spectral-radius band
# around 1 inside which the root route declines to give a strict verdict.
MINOR_EPS_REL = 1e-9
RADIUS_BAND = 1e-9


class ParityViolationError(RuntimeError):
    """The sign-adjusted polynomial pair lost its required leading
    structure; indicates an upstream normalization bug."""


@dataclass
class RealImagSplit:
    """Real polynomials g, h with f(i*w) = g(w) + i*h(w).

    Both arrays hold descending coefficients and share length degree+1;
    whichever of the two has a structurally zero top coefficient keeps it,
    so the arrays stay aligned for the parity step.
    """

    g: np.ndarray
    h: np.ndarray


@dataclass
class HurwitzPair:
    """Real polynomial pair (B, C) feeding the interleaved matrix.

    B has degree n with leading coefficient +1 (descending, length n+1);
    C has degree at most n-1 (descending, length n).
    """

    b: np.ndarray
    c: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.b) - 1


@dataclass
class HurwitzMatrix:
    """Interleaved 2n x 2n coefficient matrix and its n even-order
    leading principal minors (orders 2, 4, ..., 2n)."""

    order: int
    rows: np.ndarray
    minors: np.ndarray


@dataclass
class ConvergenceVerdict:
    status: str
    spectral_radius_estimate: float | None = None
    minors: np.ndarray | None = None
    route: str = "hurwitz"
    witness: str | None = None


def mobius_disk_to_halfplane(f: Polynomial) -> tuple[Polynomial, bool]:
    """Map the open unit disk to the open left half-plane.

    Returns (transformed polynomial, degree_drop). The transformed leading
    coefficient equals f(1) (bit-for-bit: both are the same sequential sum
    of the input coefficients), so degree_drop is True exactly when 1 is a
    root of f; the disk test then fails outright without touching the
    half-plane machinery.
    """
    n = f.degree
    if n < 1:
        raise ValueError("degree >= 1 required")
    # (z+1)^j and (z-1)^j coefficient tables, j = 0..n
    plus = [np.array([1.0])]
    minus = [np.array([1.0])]
    for _ in range(n):
        plus.append(np.convolve(plus[-1], [1.0, 1.0]))
        minus.append(np.convolve(minus[-1], [1.0, -1.0]))
    acc = np.zeros(n + 1, dtype=complex)
    for k, a_k in enumerate(f.coeffs):
        acc += a_k * np.convolve(plus[n - k], minus[k])
    return Polynomial(acc), bool(acc[0] == 0)


# i**j for j mod 4, applied to (re, im) without complex rounding error:
# the factor only permutes and flips the two parts.
def _times_i_power(re: float, im: float, j: int) -> tuple[float, float]:
    j &= 3
    if j == 0:
        return re, im
    if j == 1:
        return -im, re
    if j == 2:
        return -re, -im
    return im, -re


def split_g_h(f_tilde: Polynomial) -> RealImagSplit:
    """Separate f_tilde(i*w) into real and imaginary parts.

    The input is normalized to monic first (the leading 1 is set exactly,
    which is what later guarantees an exact structural zero at the top of
    one of the two output arrays). Raises ZeroLeadingError for the zero
    polynomial.
    """
    d = f_tilde.monic().coeffs
    n = len(d) - 1
    g = np.zeros(n + 1)
    h = np.zeros(n + 1)
    for idx, coeff in enumerate(d):
        g[idx], h[idx] = _times_i_power(coeff.real, coeff.imag, n - idx)
    return RealImagSplit(g=g, h=h)


def parity_adjust(split: RealImagSplit, n: int) -> HurwitzPair:
    """Sign- and swap-correct (g, h) into the pair (B, C).

    For even n = 2m: B = (-1)^m g, C = (-1)^(m-1) h. For odd n = 2m+1 the
    roles swap: B = (-1)^m h, C = (-1)^m g. Monic input upstream forces
    B's leading coefficient to exactly +1 and C's top (degree-n) slot to
    exactly 0; anything else raises ParityViolationError.
    """
    if n != len(split.g) - 1:
        raise ValueError("n must equal the degree of the split source")
    if n % 2 == 0:
        m = n // 2
        big = (-1.0) ** m * split.g
        small = (-1.0) ** (m - 1) * split.h
    else:
        m = (n - 1) // 2
        big = (-1.0) ** m * split.h
        small = (-1.0) ** m * split.g
    if not big[0] > 0:
        raise ParityViolationError(
            f"leading coefficient {big[0]!r} not positive after parity step"
        )
    if small[0] != 0:
        raise ParityViolationError(
            f"companion polynomial has degree-{n} term {small[0]!r}, expected exact 0"
        )
    return HurwitzPair(b=big, c=small[1:])


def hurwitz_matrix(pair: HurwitzPair) -> HurwitzMatrix:
    """Interleave B and C rows into the 2n x 2n band matrix.

    Row 2k-1 (1-indexed) carries B shifted right by k-1 columns; row 2k
    carries C shifted right by k columns. Minors are the determinants of
    the leading blocks of orders 2, 4, ..., 2n, each by LU elimination
    with partial pivoting in double precision.
    """
    n = pair.degree
    rows = np.zeros((2 * n, 2 * n))
    for k in range(1, n + 1):
        rows[2 * k - 2, k - 1 : k + n] = pair.b
        rows[2 * k - 1, k : k + n] = pair.c
    minors = np.empty(n)
    for k in range(1, n + 1):
        minors[k - 1] = np.linalg.det(rows[: 2 * k, : 2 * k])
    return HurwitzMatrix(order=2 * n, rows=rows, minors=minors)


def _minor_tolerances(rows: np.ndarray, n: int) -> np.ndarray:
    # Per-minor tolerance from the Hadamard row bound of each leading
    # block: minors of the same matrix span many orders of magnitude, so a
    # single shared tolerance would let the largest minor mask decisive
    # signs among the smallest. No absolute floor: a tiny row product
    # means the determinant itself is provably tiny and computed at that
    # scale, and a floor would blind the test exactly there (a zero row
    # product gives an exact zero determinant, caught as marginal).
    eps = np.empty(n)
    for k in range(1, n + 1):
        blk = rows[: 2 * k, : 2 * k]
        eps[k - 1] = MINOR_EPS_REL * np.prod(np.max(np.abs(blk), axis=1))
    return eps


def is_stable(f: Polynomial) -> ConvergenceVerdict:
    """Left half-plane test: are all roots of f strictly stable?

    Normalizes to monic, splits into (g, h), parity-adjusts to (B, C) and
    checks the n even-order minors: all positive (beyond tolerance) means
    stable, any decisively negative means unstable, otherwise marginal
    with the offending minor recorded as witness.
    """
    if f.degree < 1:
        raise ValueError("degree >= 1 required")
    pair = parity_adjust(split_g_h(f), f.degree)
    hm = hurwitz_matrix(pair)
    n = pair.degree
    eps = _minor_tolerances(hm.rows, n)
    if np.all(hm.minors > eps):
        status, witness = STABLE, None
    elif np.any(hm.minors < -eps):
        status, witness = UNSTABLE, None
    else:
        k = int(np.nonzero(np.abs(hm.minors) <= eps)[0][0]) + 1
        status = MARGINAL
        witness = f"Hurwitz minor {k} within tolerance of zero"
    return ConvergenceVerdict(
        status=status, minors=hm.minors, route="hurwitz", witness=witness
    )


def unit_disk_test(f: Polynomial) -> ConvergenceVerdict:
    """Are all roots of f strictly inside the unit circle?

    Exact zero trailing coefficients are factored out first (roots at 0
    are inside the disk; the Gauss-Seidel characteristic polynomial always
    carries one). A degree drop in the disk-to-half-plane transform means
    1 is a root, which fails the strict test immediately; otherwise the
    half-plane verdict is relabeled converges/diverges/marginal.
    """
    if f.degree < 1:
        raise ValueError("degree >= 1 required")
    coeffs = f.coeffs
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) == 1:
        return ConvergenceVerdict(status=CONVERGES, route="hurwitz")
    transformed, dropped = mobius_disk_to_halfplane(Polynomial(coeffs))
    if dropped:
        return ConvergenceVerdict(
            status=DIVERGES,
            route="hurwitz",
            witness="root at +1 on the unit circle",
        )
    inner = is_stable(transformed)
    status = {STABLE: CONVERGES, UNSTABLE: DIVERGES, MARGINAL: MARGINAL}[inner.status]
    return ConvergenceVerdict(
        status=status, minors=inner.minors, route="hurwitz", witness=inner.witness
    )


def radius_verdict(f: Polynomial) -> ConvergenceVerdict:
    """Same question answered through the root finder.

    Marginal inside |rho - 1| <= RADIUS_BAND; may raise NoConvergenceError
    from the root iteration, in which case callers fall back to
    unit_disk_test.
    """
    rho = spectral_radius(f)
    if abs(rho - 1.0) <= RADIUS_BAND:
        status = MARGINAL
        witness = f"spectral radius {rho!r} within {RADIUS_BAND:g} of 1"
    elif rho < 1.0:
        status, witness = CONVERGES, None
    else:
        status, witness = DIVERGES, None
    return ConvergenceVerdict(
        status=status, spectral_radius_estimate=rho, route="radius", witness=witness
    )
