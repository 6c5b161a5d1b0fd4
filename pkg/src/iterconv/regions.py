"""Closed-form convergence regions for orders 2 and 3.

Order 2 admits a single region shared by both methods. Order 3 reduces to
two coefficients (p, q) for the Jacobi cubic and three (a, d, b) for the
Gauss-Seidel quadratic; the real-case regions are quoted in those reduced
coordinates. Boundary samplers construct points where the extremal root
sits exactly on the unit circle, for the complex case where no closed
interior description is available. All strict inequalities stay strict:
the boundary itself does not converge.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .linalg import ZeroDiagonalError, as_matrix

__all__ = [
    "BOUNDARY1",
    "BOUNDARY2",
    "GS_LOWER",
    "GS_UPPER",
    "NotRealError",
    "RatioOutOfRangeError",
    "JacobiCubicParams",
    "GsQuadraticParams",
    "BoundaryPoint",
    "converges_2x2",
    "jacobi3_params",
    "jacobi3_real_converges",
    "boundary1_sample",
    "boundary2_sample",
    "gs3_params",
    "gs3_real_converges",
    "gs3_band",
    "matrix_for_pq",
    "gs_complex_boundary_sample",
]

BOUNDARY1 = "boundary1"
BOUNDARY2 = "boundary2"
GS_LOWER = "gs_lower"
GS_UPPER = "gs_upper"


class NotRealError(ValueError):
    """A real-case region query received coefficients with nonzero
    imaginary part."""


class RatioOutOfRangeError(ValueError):
    """|b/a| >= 1: the band construction has no convergent interior."""


@dataclass
class JacobiCubicParams:
    """Reduced coefficients of the Jacobi cubic t**3 + p*t + q."""

    p: complex
    q: complex


@dataclass
class GsQuadraticParams:
    """Coefficients of the Gauss-Seidel quadratic a*t**2 + d*t + b.

    a is the diagonal product of the source system and must be nonzero for
    any valid system.
    """

    a: complex
    d: complex
    b: complex


@dataclass
class BoundaryPoint:
    """A (q, p) pair on one of the order-3 boundary families, with the
    sampler parameters (angle, magnitude) that produced it."""

    q: complex
    p: complex
    family: str
    params: tuple[float, float]


def converges_2x2(a) -> bool:
    """Shared order-2 criterion: |a12*a21| < |a11*a22|, strictly.

    Both methods converge or diverge together at order 2, so one predicate
    serves both.
    """
    m = as_matrix(a)
    if m.shape[0] != 2:
        raise ValueError("order-2 matrix required")
    if m[0, 0] == 0 or m[1, 1] == 0:
        raise ZeroDiagonalError(0 if m[0, 0] == 0 else 1)
    return bool(abs(m[0, 1] * m[1, 0]) < abs(m[0, 0] * m[1, 1]))


def _checked_3x3(a):
    m = as_matrix(a)
    if m.shape[0] != 3:
        raise ValueError("order-3 matrix required")
    for i in range(3):
        if m[i, i] == 0:
            raise ZeroDiagonalError(i)
    return m


def jacobi3_params(a) -> JacobiCubicParams:
    """Reduce an order-3 system to the Jacobi cubic coefficients.

    p and q are ratios of sums of entry triple-products over the diagonal
    product; for integer entries both numerator and denominator are exact
    and the single division is correctly rounded.
    """
    # Python-scalar arithmetic: its complex division reduces to one
    # correctly rounded real division when the denominator is real, which
    # keeps integer-entry inputs exact; the numpy path loses an ulp there.
    m = [[complex(v) for v in row] for row in _checked_3x3(a)]
    den = m[0][0] * m[1][1] * m[2][2]
    p = (
        -m[0][2] * m[1][1] * m[2][0]
        - m[1][2] * m[0][0] * m[2][1]
        - m[0][1] * m[2][2] * m[1][0]
    ) / den
    q = (m[0][2] * m[2][1] * m[1][0] + m[0][1] * m[1][2] * m[2][0]) / den
    return JacobiCubicParams(p=p, q=q)


def _require_real(*values) -> tuple[float, ...]:
    out = []
    for v in values:
        c = complex(v)
        if c.imag != 0:
            raise NotRealError(f"nonzero imaginary part {c.imag!r}")
        out.append(c.real)
    return tuple(out)


def jacobi3_real_converges(params: JacobiCubicParams) -> bool:
    """Real-case Jacobi region for order 3: the open set bounded by the
    lines p = -q-1 and p = q-1 from below and the parabola p = 1-q**2
    from above, with -1 < q < 1."""
    p, q = _require_real(params.p, params.q)
    return -1.0 < q < 1.0 and p > -q - 1.0 and p > q - 1.0 and p < 1.0 - q * q


def boundary1_sample(phi1: float, q: complex) -> BoundaryPoint:
    """Point on the first boundary family: one root pinned at e**(i*phi1)
    on the unit circle, p = -q*e**(-i*phi1) - e**(2i*phi1).

    Any |q| <= 1 is accepted; whether a given (phi1, q) arises from a
    genuine root configuration with the remaining roots inside the disk is
    left to the downstream root-witness check.
    """
    qc = complex(q)
    if abs(qc) > 1.0:
        raise ValueError("|q| <= 1 required")
    p = -qc * cmath.exp(-1j * phi1) - cmath.exp(2j * phi1)
    return BoundaryPoint(q=qc, p=p, family=BOUNDARY1, params=(float(phi1), abs(qc)))


def boundary2_sample(phi1: float, r1: float) -> BoundaryPoint:
    """Point on the second boundary family: a symmetric pair of roots on
    the unit circle and a third root of magnitude r1 <= 1 at angle phi1.

    q = -r1*e**(3i*phi1) and p = (1 - r1**2)*e**(2i*phi1), so |p| is
    exactly 1 - r1**2.
    """
    if not 0.0 <= r1 <= 1.0:
        raise ValueError("0 <= r1 <= 1 required")
    q = -r1 * cmath.exp(3j * phi1)
    p = (1.0 - r1 * r1) * cmath.exp(2j * phi1)
    return BoundaryPoint(q=q, p=p, family=BOUNDARY2, params=(float(phi1), float(r1)))


def gs3_params(a) -> GsQuadraticParams:
    """Reduce an order-3 system to the Gauss-Seidel quadratic a*t**2 +
    d*t + b (the full characteristic cubic has a factored-out root at 0)."""
    m = _checked_3x3(a)
    lead = m[0, 0] * m[1, 1] * m[2, 2]
    d = (
        m[1, 0] * m[0, 2] * m[2, 1]
        - m[0, 2] * m[1, 1] * m[2, 0]
        - m[2, 1] * m[0, 0] * m[1, 2]
        - m[1, 0] * m[2, 2] * m[0, 1]
    )
    b = m[0, 1] * m[1, 2] * m[2, 0]
    return GsQuadraticParams(a=complex(lead), d=complex(d), b=complex(b))


def gs3_real_converges(params: GsQuadraticParams) -> bool:
    """Real-case Gauss-Seidel region for order 3: |d| < |a+b| and
    |b/a| < 1, both strict; covers the complex-conjugate root case too."""
    a, d, b = _require_real(params.a, params.d, params.b)
    if a == 0:
        raise ZeroDiagonalError(None)
    return abs(d) < abs(a + b) and abs(b / a) < 1.0


def gs3_band(a: float, b: float) -> tuple[float, float]:
    """p-intercepts of the two parallel lines bounding the Gauss-Seidel
    region in the (q, p) plane: always -1 for the lower line and
    (a + 2b)/a for the upper, which lies in (-1, 3) whenever |b/a| < 1."""
    av, bv = _require_real(a, b)
    if av == 0:
        raise ZeroDiagonalError(None)
    if abs(bv / av) >= 1.0:
        raise RatioOutOfRangeError(f"|b/a| = {abs(bv / av)!r} >= 1")
    return -1.0, (av + 2.0 * bv) / av


def matrix_for_pq(p: float, q: float):
    """A unit-diagonal order-3 matrix whose Jacobi cubic has exactly the
    given (p, q); shows every reduced-coefficient pair is realized by some
    system. Round-trips through jacobi3_params exactly whenever p + q is
    exact in double precision."""
    return as_matrix([[1.0, -p - q, q], [1.0, 1.0, 0.0], [1.0, 1.0, 1.0]])


def gs_complex_boundary_sample(phi1: float, b1: complex) -> complex:
    """Reduced linear coefficient d1 = d/a putting a root of the monic
    Gauss-Seidel quadratic t**2 + d1*t + b1 at e**(i*phi1) on the unit
    circle: d1 = -e**(i*phi1) - b1*e**(-i*phi1). Requires |b1| < 1 so the
    companion root stays inside."""
    b1c = complex(b1)
    if not abs(b1c) < 1.0:
        raise ValueError("|b1| < 1 required")
    return -cmath.exp(1j * phi1) - b1c * cmath.exp(-1j * phi1)
