"""Convergence analysis for the Jacobi and Gauss-Seidel iterations.

The package decides, for a given system matrix, whether each of the two
classical fixed-point iterations converges: through polynomial roots,
through a Hurwitz-style unit-disk criterion, or through closed-form
regions at orders 2 and 3. A seeded Monte Carlo harness estimates how
often random systems fall into each outcome, and plain solvers confirm
verdicts empirically.
"""

from .charpoly import (
    NoConvergenceError,
    OrderTooLargeError,
    Polynomial,
    RootSet,
    ZeroLeadingError,
    char_poly,
    pencil_char_poly,
    roots,
    spectral_radius,
)
from .experiments import Table1Report, UnresolvableError, classify, run_table1, sample_matrix
from .linalg import (
    MAX_ORDER,
    Slae,
    Splitting,
    ZeroDiagonalError,
    as_matrix,
    gs_iteration_matrix,
    jacobi_iteration_matrix,
    split,
)
from .regions import (
    BoundaryPoint,
    GsQuadraticParams,
    JacobiCubicParams,
    NotRealError,
    boundary1_sample,
    boundary2_sample,
    converges_2x2,
    gs3_band,
    gs3_params,
    gs3_real_converges,
    gs_complex_boundary_sample,
    jacobi3_params,
    jacobi3_real_converges,
    matrix_for_pq,
)
from .solvers import IterationTrace, gauss_seidel_solve, jacobi_solve
from .stability import (
    ConvergenceVerdict,
    hurwitz_matrix,
    is_stable,
    mobius_disk_to_halfplane,
    parity_adjust,
    radius_verdict,
    split_g_h,
    unit_disk_test,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "MAX_ORDER",
    "Slae",
    "Splitting",
    "ZeroDiagonalError",
    "as_matrix",
    "split",
    "jacobi_iteration_matrix",
    "gs_iteration_matrix",
    "Polynomial",
    "RootSet",
    "char_poly",
    "pencil_char_poly",
    "roots",
    "spectral_radius",
    "NoConvergenceError",
    "OrderTooLargeError",
    "ZeroLeadingError",
    "ConvergenceVerdict",
    "mobius_disk_to_halfplane",
    "split_g_h",
    "parity_adjust",
    "hurwitz_matrix",
    "is_stable",
    "unit_disk_test",
    "radius_verdict",
    "JacobiCubicParams",
    "GsQuadraticParams",
    "BoundaryPoint",
    "NotRealError",
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
    "IterationTrace",
    "jacobi_solve",
    "gauss_seidel_solve",
    "Table1Report",
    "UnresolvableError",
    "sample_matrix",
    "classify",
    "run_table1",
]
