"""Command-line front end.

Four subcommands: `analyze` (verdicts for one matrix through any of the
backends), `solve` (actually run an iteration), `region` (delimited plot
data for the order-3 convergence regions), `montecarlo` (the seeded
reproduction experiment). Exit codes: 0 success or converged, 2 input
error, 3 diverged, 4 iteration cap, 5 internal backend disagreement.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from ._jsonio import _float_token, dumps, write_path
from .charpoly import NoConvergenceError, char_poly
from .experiments import Table1Report, UnresolvableError, run_table1
from .linalg import (
    Slae,
    ZeroDiagonalError,
    as_matrix,
    gs_iteration_matrix,
    jacobi_iteration_matrix,
)
from .regions import (
    JacobiCubicParams,
    NotRealError,
    RatioOutOfRangeError,
    boundary1_sample,
    boundary2_sample,
    converges_2x2,
    gs3_band,
    gs3_params,
    gs3_real_converges,
    jacobi3_params,
    jacobi3_real_converges,
)
from .solvers import CONVERGED, DIVERGED, gauss_seidel_solve, jacobi_solve
from .stability import CONVERGES, DIVERGES, MARGINAL, radius_verdict, unit_disk_test

__all__ = [
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_DIVERGED",
    "EXIT_MAX_ITERATIONS",
    "EXIT_UNRESOLVABLE",
    "MatrixFile",
    "MatrixFileError",
    "read_matrix_file",
    "build_parser",
    "run",
]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGED = 3
EXIT_MAX_ITERATIONS = 4
EXIT_UNRESOLVABLE = 5

_BOUNDARY_POINTS = 201
_GRID_Q = (-1.5, 1.5)
_GRID_P = (-2.5, 3.5)


class MatrixFileError(ValueError):
    """Input file problem, with a location when one is known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


@dataclass
class MatrixFile:
    matrix: np.ndarray
    rhs: np.ndarray | None


def _entry_value(v, what: str) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)
    ):
        return complex(v[0], v[1])
    raise MatrixFileError(f"{what} must be a number or a [re, im] pair, got {v!r}")


def _parse_structured(text: str) -> MatrixFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"invalid JSON: {e.msg}", e.lineno, e.colno)
    if not isinstance(doc, dict):
        raise MatrixFileError("top level must be an object")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise MatrixFileError("field 'n' must be a positive integer")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise MatrixFileError(f"field 'entries' must list {n * n} values row-major")
    flat = [_entry_value(v, "matrix entry") for v in entries]
    matrix = np.array(flat, dtype=complex).reshape(n, n)
    rhs = None
    if "rhs" in doc and doc["rhs"] is not None:
        rv = doc["rhs"]
        if not isinstance(rv, list) or len(rv) != n:
            raise MatrixFileError(f"field 'rhs' must list {n} values")
        rhs = np.array([_entry_value(v, "rhs entry") for v in rv], dtype=complex)
    return MatrixFile(matrix=matrix, rhs=rhs)


def _parse_plain(text: str) -> MatrixFile:
    rows: list[tuple[int, list[float]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        found = list(re.finditer(r"[^\s,]+", body))
        if not found:
            continue
        row = []
        for m in found:
            try:
                row.append(float(m.group()))
            except ValueError:
                raise MatrixFileError(f"not a number: {m.group()!r}", lineno, m.start() + 1)
        rows.append((lineno, row))
    if not rows:
        raise MatrixFileError("no numeric rows found")
    n = len(rows)
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise MatrixFileError(f"expected {width} values, found {len(row)}", lineno)
    if width == n:
        return MatrixFile(matrix=np.array([r for _, r in rows], dtype=complex), rhs=None)
    if width == n + 1:  # augmented [A | b]
        block = np.array([r for _, r in rows], dtype=complex)
        return MatrixFile(matrix=block[:, :n], rhs=block[:, n])
    raise MatrixFileError(
        f"{n} rows of {width} values is neither square nor augmented", rows[0][0]
    )


def read_matrix_file(path: str) -> MatrixFile:
    """Load a matrix (and optional right-hand side) from a structured
    document or plain delimited text; see the bundled sample_inputs."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    mf = _parse_structured(text) if text.lstrip().startswith("{") else _parse_plain(text)
    try:
        mf.matrix = as_matrix(mf.matrix)
    except ValueError as e:
        raise MatrixFileError(str(e))
    return mf


def _num(value) -> object:
    """JSON-native form of a possibly complex scalar."""
    c = complex(value)
    if c.imag == 0:
        return c.real
    return [c.real, c.imag]


def _region_backend(m: np.ndarray, method: str) -> dict:
    n = m.shape[0]
    try:
        if n == 2:
            return {"status": CONVERGES if converges_2x2(m) else DIVERGES}
        if n == 3:
            if method == "jacobi":
                ok = jacobi3_real_converges(jacobi3_params(m))
            else:
                ok = gs3_real_converges(gs3_params(m))
            return {"status": CONVERGES if ok else DIVERGES}
    except NotRealError:
        return {"status": "unavailable", "reason": "closed form needs real entries"}
    return {"status": "unavailable", "reason": "closed form covers orders 2 and 3 only"}


def _analyze_method(m: np.ndarray, method: str, backends: list[str]) -> dict:
    it = jacobi_iteration_matrix(m) if method == "jacobi" else gs_iteration_matrix(m)
    f = char_poly(it)
    entry: dict = {"char_poly": [_num(c) for c in f.coeffs], "backends": {}}
    if "roots" in backends:
        try:
            v = radius_verdict(f)
            entry["backends"]["roots"] = {
                "status": v.status,
                "spectral_radius": v.spectral_radius_estimate,
            }
        except NoConvergenceError as e:
            entry["backends"]["roots"] = {
                "status": "unavailable",
                "reason": f"root iteration stalled (residual {e.residual:.3e})",
            }
    if "hurwitz" in backends:
        v = unit_disk_test(f)
        b: dict = {"status": v.status}
        if v.witness is not None:
            b["witness"] = v.witness
        entry["backends"]["hurwitz"] = b
    if "region" in backends:
        entry["backends"]["region"] = _region_backend(m, method)
    decisive = {
        b["status"]
        for b in entry["backends"].values()
        if b["status"] in (CONVERGES, DIVERGES)
    }
    if len(decisive) == 1:
        entry["verdict"] = decisive.pop()
    elif len(decisive) > 1:
        entry["verdict"] = "disagreement"
    elif any(b["status"] == MARGINAL for b in entry["backends"].values()):
        entry["verdict"] = MARGINAL
    else:
        entry["verdict"] = "unknown"
    return entry


def cmd_analyze(args) -> int:
    mf = read_matrix_file(args.path)
    m = mf.matrix
    methods = ["jacobi", "gauss_seidel"] if args.method == "both" else [args.method.replace("-", "_")]
    backends = ["roots", "hurwitz", "region"] if args.backend == "all" else [args.backend]
    report = {"version": __version__, "n": int(m.shape[0]), "methods": {}}
    for method in methods:
        report["methods"][method] = _analyze_method(m, method, backends)
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        print(f"order {m.shape[0]} system, backends: {', '.join(backends)}")
        for method, entry in report["methods"].items():
            print(f"{method}:")
            for name, b in entry["backends"].items():
                extra = ""
                if "spectral_radius" in b and b["spectral_radius"] is not None:
                    extra = f" (spectral radius {b['spectral_radius']:.6g})"
                elif "reason" in b:
                    extra = f" ({b['reason']})"
                elif "witness" in b:
                    extra = f" ({b['witness']})"
                print(f"  {name}: {b['status']}{extra}")
            print(f"  verdict: {entry['verdict']}")
    if any(e["verdict"] == "disagreement" for e in report["methods"].values()):
        print("error: backends disagree; one of them is wrong", file=sys.stderr)
        return EXIT_UNRESOLVABLE
    return EXIT_OK


def cmd_solve(args) -> int:
    mf = read_matrix_file(args.path)
    if mf.rhs is None:
        raise MatrixFileError("solve needs a right-hand side ('rhs' field or augmented column)")
    s = Slae(a=mf.matrix, rhs=mf.rhs)
    x0 = None
    if args.x0 is not None:
        try:
            x0 = np.array([float(t) for t in args.x0.split(",")], dtype=complex)
        except ValueError:
            print(f"error: --x0 must be comma-separated numbers, got {args.x0!r}", file=sys.stderr)
            return EXIT_INPUT
        if x0.shape != (s.n,):
            print(f"error: --x0 must have {s.n} components", file=sys.stderr)
            return EXIT_INPUT
    solver = jacobi_solve if args.method == "jacobi" else gauss_seidel_solve
    trace = solver(s, x0=x0, tol=args.tol, max_iter=args.max_iter)
    report = {
        "version": __version__,
        "method": args.method.replace("-", "_"),
        "tol": args.tol,
        "max_iter": args.max_iter,
        "status": trace.status,
        "iterations": trace.iterations,
        "update_history": [float(u) for u in trace.residual_history],
    }
    if trace.solution is not None:
        report["solution"] = [_num(x) for x in trace.solution]
        report["residual_inf"] = float(np.max(np.abs(s.a @ trace.solution - s.rhs)))
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        print(f"{report['method']}: {trace.status} after {trace.iterations} sweeps")
        if trace.solution is not None:
            shown = ", ".join(_float_token(x.real) if x.imag == 0 else str(x) for x in trace.solution)
            print(f"solution: [{shown}]")
            print(f"residual (inf-norm): {report['residual_inf']:.3e}")
        elif trace.iterations:
            print(f"last update norm: {trace.residual_history[-1]:.6g}")
    if trace.status == CONVERGED:
        return EXIT_OK
    if trace.status == DIVERGED:
        return EXIT_DIVERGED
    return EXIT_MAX_ITERATIONS


def _jacobi_region_curves() -> list[tuple[str, np.ndarray, np.ndarray]]:
    """The three boundary pieces of the real order-3 Jacobi region as
    (name, q, p) polylines: two lines meeting at (0, -1) and the parabola
    cap p = 1 - q**2."""
    t = np.linspace(0.0, 1.0, _BOUNDARY_POINTS)
    q1 = -1.0 + t
    q2 = t
    q3 = -1.0 + 2.0 * t
    return [
        ("jacobi-lower-left", q1, -q1 - 1.0),
        ("jacobi-lower-right", q2, q2 - 1.0),
        ("jacobi-parabola", q3, 1.0 - q3 * q3),
    ]


def _write_boundary_file(path: str, curves, header_lines) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("# curve\tq_re\tq_im\tp_re\tp_im\n")
        for name, qs, ps in curves:
            for qv, pv in zip(qs, ps):
                qc, pc = complex(qv), complex(pv)
                fh.write(
                    f"{name}\t{_float_token(qc.real)}\t{_float_token(qc.imag)}"
                    f"\t{_float_token(pc.real)}\t{_float_token(pc.imag)}\n"
                )


def _write_grid_file(path: str, n: int, label) -> None:
    qs = np.linspace(*_GRID_Q, n)
    ps = np.linspace(*_GRID_P, n)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# q\tp\tlabel\n")
        for qv in qs:
            for pv in ps:
                fh.write(f"{_float_token(qv)}\t{_float_token(pv)}\t{label(pv, qv)}\n")


def _jacobi_label(p: float, q: float) -> str:
    inside = jacobi3_real_converges(JacobiCubicParams(p=p, q=q))
    return "inside-Jacobi" if inside else "outside"


def cmd_region(args) -> int:
    if args.grid < 1:
        print("error: --grid must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    curves: list = []
    header: list[str] = [f"target {args.target}"]
    if args.target == "jacobi3":
        curves.extend(_jacobi_region_curves())
        if args.phi1 is not None:
            qs = np.linspace(-1.0, 1.0, _BOUNDARY_POINTS)
            pts1 = [boundary1_sample(args.phi1, qv) for qv in qs]
            rs = np.linspace(0.0, 1.0, _BOUNDARY_POINTS)
            pts2 = [boundary2_sample(args.phi1, rv) for rv in rs]
            header.append(f"complex boundary curves at phi1={_float_token(args.phi1)}")
            curves.append(
                ("boundary1", np.array([b.q for b in pts1]), np.array([b.p for b in pts1]))
            )
            curves.append(
                ("boundary2", np.array([b.q for b in pts2]), np.array([b.p for b in pts2]))
            )
        label = _jacobi_label
    else:  # gs3
        if args.a is None or args.b is None:
            print("error: gs3 needs --a and --b", file=sys.stderr)
            return EXIT_INPUT
        if args.phi1 is not None:
            print("error: --phi1 applies to the jacobi3 target only", file=sys.stderr)
            return EXIT_INPUT
        lower, upper = gs3_band(args.a, args.b)
        header.append(
            f"gs-band lower_intercept={_float_token(lower)} upper_intercept={_float_token(upper)}"
        )
        qs = np.linspace(*_GRID_Q, _BOUNDARY_POINTS)
        curves.append(("gs-lower", qs, -qs - 1.0))
        curves.append(("gs-upper", qs, -qs + upper))
        curves.extend(_jacobi_region_curves())

        def label(p: float, q: float) -> str:
            in_j = jacobi3_real_converges(JacobiCubicParams(p=p, q=q))
            in_gs = lower < p + q < upper
            if in_j and in_gs:
                return "both"
            if in_j:
                return "J-only"
            if in_gs:
                return "GS-only"
            return "neither"

        print(f"gs band intercepts: lower {_float_token(lower)} upper {_float_token(upper)}")
    boundary_path = f"{args.out}.boundary.tsv"
    grid_path = f"{args.out}.grid.tsv"
    _write_boundary_file(boundary_path, curves, header)
    _write_grid_file(grid_path, args.grid, label)
    print(boundary_path)
    print(grid_path)
    return EXIT_OK


def _parse_n_range(spec: str) -> tuple[int, ...]:
    spec = spec.strip()
    m = re.fullmatch(r"(\d+)\.\.(\d+)", spec)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if hi < lo:
            raise MatrixFileError(f"empty order range {spec!r}")
        return tuple(range(lo, hi + 1))
    try:
        return tuple(int(t) for t in spec.split(","))
    except ValueError:
        raise MatrixFileError(f"--n-range must look like '2..5' or '2,3,5', got {spec!r}")


def _table_text(report: Table1Report) -> str:
    lines = [
        f"seed {report.seed}, {report.trials} trials per order",
        f"{'n':>3} {'both':>10} {'gs_only':>10} {'jacobi_only':>12} {'neither':>10}",
    ]
    for n in report.ns:
        c = report.per_n[n]["counts"]
        lines.append(
            f"{n:>3} {c['both']:>10} {c['gs_only']:>10} {c['jacobi_only']:>12} {c['neither']:>10}"
        )
    return "\n".join(lines) + "\n"


def cmd_montecarlo(args) -> int:
    ns = _parse_n_range(args.n_range)
    report = run_table1(args.seed, args.trials, ns, workers=args.workers)
    sys.stdout.write(_table_text(report))
    if args.out is not None:
        if args.format == "json":
            mapping = report.to_mapping()
            mapping["version"] = __version__
            mapping["backend"] = "roots-with-hurwitz-audit"
            write_path(args.out, mapping)
        else:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(_table_text(report))
        print(args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="iterconv",
        description="Convergence analysis for Jacobi and Gauss-Seidel iterations.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="verdicts for one matrix")
    a.add_argument("path", help="matrix file (structured document or delimited text)")
    a.add_argument("--method", choices=["jacobi", "gauss-seidel", "both"], default="both")
    a.add_argument("--backend", choices=["roots", "hurwitz", "region", "all"], default="all")
    a.add_argument("--format", choices=["json", "text"], default="text")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", help="run an iteration on a system with rhs")
    s.add_argument("path")
    s.add_argument("--method", choices=["jacobi", "gauss-seidel"], required=True)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=100000)
    s.add_argument("--x0", help="comma-separated start vector (default zeros)")
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("region", help="emit region boundary and grid data")
    r.add_argument("--target", choices=["jacobi3", "gs3"], required=True)
    r.add_argument("--a", type=float, help="diagonal product (gs3)")
    r.add_argument("--b", type=float, help="upper-cycle product (gs3)")
    r.add_argument("--grid", type=int, default=101, help="grid points per axis")
    r.add_argument("--phi1", type=float, help="angle for complex boundary curves (jacobi3)")
    r.add_argument("--out", required=True, help="output path prefix")
    r.set_defaults(func=cmd_region)

    m = sub.add_parser("montecarlo", help="seeded outcome-frequency experiment")
    m.add_argument("--seed", type=int, default=1)
    m.add_argument("--trials", type=int, default=100000)
    m.add_argument("--n-range", default="2..5")
    m.add_argument("--out", help="report file")
    m.add_argument("--format", choices=["json", "text"], default="json")
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=cmd_montecarlo)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ZeroDiagonalError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RatioOutOfRangeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except UnresolvableError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNRESOLVABLE


if __name__ == "__main__":
    sys.exit(run())
