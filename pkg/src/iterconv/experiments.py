"""Deterministic Monte Carlo estimate of how often each method converges.

For each order n, `trials` random systems are drawn with entries uniform
on [-100, 100] and classified into four outcomes (both methods converge,
only Gauss-Seidel, only Jacobi, neither). Every trial owns a counter-mode
random substream keyed by (seed, n, trial index), so the draw sequence is
independent of execution order and worker count; aggregation is plain
commutative counting. The default verdict backend is the spectral radius
from the root finder; a 1 percent subsample is re-checked through the
Hurwitz route, and any decisive disagreement aborts the run.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .charpoly import (
    NoConvergenceError,
    Polynomial,
    char_poly,
    durand_kerner_batch,
    spectral_radius,
)
from .linalg import as_matrix, gs_iteration_matrix, jacobi_iteration_matrix
from .stability import CONVERGES, DIVERGES, RADIUS_BAND, unit_disk_test

__all__ = [
    "BOTH",
    "GS_ONLY",
    "JACOBI_ONLY",
    "NEITHER",
    "CLASSES",
    "AUDIT_FRACTION",
    "UnresolvableError",
    "Table1Report",
    "sample_matrix",
    "classify",
    "run_table1",
]

BOTH = "both"
GS_ONLY = "gs_only"
JACOBI_ONLY = "jacobi_only"
NEITHER = "neither"
CLASSES = (BOTH, GS_ONLY, JACOBI_ONLY, NEITHER)

AUDIT_FRACTION = 0.01
ENTRY_RANGE = 100.0

# Trials per work unit. Fixed (never derived from the worker count) so the
# batch boundaries, and therefore every floating-point reduction, are
# identical no matter how the units are distributed.
_CHUNK = 4096


class UnresolvableError(RuntimeError):
    """The root route and the Hurwitz route decisively disagree on a
    non-marginal trial; one of them is wrong, so the run aborts."""


def _trial_rng(seed: int, n: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, n, trial))))


def _draw_matrix(rng: np.random.Generator, n: int):
    m = rng.uniform(-ENTRY_RANGE, ENTRY_RANGE, (n, n))
    resamples = 0
    while True:
        zero = np.nonzero(np.diag(m) == 0.0)[0]
        if zero.size == 0:
            return m, resamples
        for i in zero:  # measure-zero event, replayed entry-wise
            m[i, i] = rng.uniform(-ENTRY_RANGE, ENTRY_RANGE)
            resamples += 1


def sample_matrix(n: int, stream: np.random.Generator):
    """One random system matrix: entries independent uniform on
    [-100, 100], with exact-zero diagonal entries redrawn individually."""
    if n < 2:
        raise ValueError("order >= 2 required")
    m, _ = _draw_matrix(stream, n)
    return m


def _batch_char_polys(mats: np.ndarray):
    """Characteristic polynomial coefficients of both iteration matrices
    for a (B, n, n) stack, via the trace recurrence on the whole batch."""
    nb, n, _ = mats.shape
    ii = np.arange(n)
    d = mats[:, ii, ii]
    mj = -mats / d[:, :, None]
    mj[:, ii, ii] = 0.0
    mgs = np.zeros_like(mats)
    for i in range(n):
        row = -mats[:, i, :].copy()
        row[:, : i + 1] = 0.0
        if i:
            row -= np.einsum("bk,bkj->bj", mats[:, i, :i], mgs[:, :i, :])
        mgs[:, i, :] = row / d[:, i, None]
    out = []
    eye = np.eye(n)
    for m in (mj, mgs):
        c = np.zeros((nb, n + 1), dtype=m.dtype)
        c[:, 0] = 1.0
        work = m.copy()
        for k in range(1, n + 1):
            c[:, k] = -work[:, ii, ii].sum(axis=1) / k
            if k < n:
                work = m @ (work + c[:, k, None, None] * eye)
        out.append(c)
    return out[0], out[1]


def _batch_rho(coeffs: np.ndarray):
    """Max root modulus per row plus a per-row success flag."""
    w, residual, converged = durand_kerner_batch(coeffs.astype(complex))
    ok = converged | (residual <= 1e-8)
    rho = np.max(np.abs(w), axis=1)
    return rho, ok


def _resolve_in_band(rho: float, f: Polynomial) -> tuple[bool, bool]:
    # |rho - 1| inside the band: the radius sign is not trustworthy, so
    # the Hurwitz route decides when it can; its own marginal falls back
    # to the radius sign. Either way the trial is tallied as marginal.
    v = unit_disk_test(f)
    if v.status == CONVERGES:
        return True, True
    if v.status == DIVERGES:
        return False, True
    return rho < 1.0, True


def _method_verdict(f: Polynomial) -> tuple[bool, bool]:
    """(converges, in_marginal_band) for one method's polynomial."""
    try:
        rho = spectral_radius(f)
    except NoConvergenceError:
        v = unit_disk_test(f)
        if v.status == CONVERGES:
            return True, False
        if v.status == DIVERGES:
            return False, False
        raise UnresolvableError("no decisive verdict from either route")
    if abs(rho - 1.0) > RADIUS_BAND:
        return rho < 1.0, False
    return _resolve_in_band(rho, f)


def _combine(j_conv: bool, gs_conv: bool) -> str:
    if j_conv and gs_conv:
        return BOTH
    if gs_conv:
        return GS_ONLY
    if j_conv:
        return JACOBI_ONLY
    return NEITHER


def classify(a) -> str:
    """Four-way outcome for one matrix: radius backend per method, with
    marginal-band re-resolution through the Hurwitz route."""
    m = as_matrix(a)
    j_conv, _ = _method_verdict(char_poly(jacobi_iteration_matrix(m)))
    gs_conv, _ = _method_verdict(char_poly(gs_iteration_matrix(m)))
    return _combine(j_conv, gs_conv)


def _audit_check(name: str, f: Polynomial, conv: bool, marginal: bool, where: str):
    if marginal:
        return
    v = unit_disk_test(f)
    if (v.status == CONVERGES and not conv) or (v.status == DIVERGES and conv):
        raise UnresolvableError(
            f"{name} verdict mismatch at {where}: radius route says "
            f"{'converges' if conv else 'diverges'}, Hurwitz route says {v.status}"
        )


def _classify_chunk(seed: int, n: int, start: int, stop: int) -> dict:
    nb = stop - start
    mats = np.empty((nb, n, n))
    audit = np.empty(nb, dtype=bool)
    resamples = 0
    for idx, t in enumerate(range(start, stop)):
        rng = _trial_rng(seed, n, t)
        mats[idx], extra = _draw_matrix(rng, n)
        resamples += extra
        audit[idx] = rng.uniform() < AUDIT_FRACTION  # drawn after the entries
    cj, cgs = _batch_char_polys(mats)
    rho_j, ok_j = _batch_rho(cj)
    rho_gs, ok_gs = _batch_rho(cgs)
    counts = dict.fromkeys(CLASSES, 0)
    marginal = 0
    audited = 0
    for i in range(nb):
        if ok_j[i] and abs(rho_j[i] - 1.0) > RADIUS_BAND:
            j_conv, j_marg = rho_j[i] < 1.0, False
        elif ok_j[i]:
            j_conv, j_marg = _resolve_in_band(rho_j[i], Polynomial(cj[i]))
        else:
            j_conv, j_marg = _method_verdict(Polynomial(cj[i]))
        if ok_gs[i] and abs(rho_gs[i] - 1.0) > RADIUS_BAND:
            gs_conv, gs_marg = rho_gs[i] < 1.0, False
        elif ok_gs[i]:
            gs_conv, gs_marg = _resolve_in_band(rho_gs[i], Polynomial(cgs[i]))
        else:
            gs_conv, gs_marg = _method_verdict(Polynomial(cgs[i]))
        counts[_combine(j_conv, gs_conv)] += 1
        if j_marg or gs_marg:
            marginal += 1
        if audit[i]:
            audited += 1
            where = f"n={n} trial={start + i}"
            _audit_check("jacobi", Polynomial(cj[i]), j_conv, j_marg, where)
            _audit_check("gauss_seidel", Polynomial(cgs[i]), gs_conv, gs_marg, where)
    return {
        "counts": counts,
        "marginal": marginal,
        "resamples": resamples,
        "audited": audited,
    }


def _wilson_interval(successes: int, total: int) -> tuple[float, float]:
    z = 1.959963984540054  # two-sided 95 percent normal quantile
    if total == 0:
        return 0.0, 1.0
    phat = successes / total
    denom = 1.0 + z * z / total
    center = (phat + z * z / (2.0 * total)) / denom
    half = (
        z
        * math.sqrt(phat * (1.0 - phat) / total + z * z / (4.0 * total * total))
        / denom
    )
    # at the boundary counts the matching endpoint is analytically exact,
    # while center - half cancels to noise instead of 0
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == total else min(1.0, center + half)
    return lo, hi


@dataclass
class Table1Report:
    """Per-order outcome counts with diagnostics and interval estimates."""

    seed: int
    trials: int
    ns: tuple[int, ...]
    per_n: dict[int, dict]

    def to_mapping(self) -> dict:
        """JSON-ready form: string keys, proportions with 95 percent
        Wilson intervals, no floats other than derived ones."""
        body = {}
        for n in self.ns:
            entry = self.per_n[n]
            props = {}
            for cls in CLASSES:
                lo, hi = _wilson_interval(entry["counts"][cls], self.trials)
                props[cls] = {
                    "estimate": entry["counts"][cls] / self.trials,
                    "ci95": [lo, hi],
                }
            body[str(n)] = {
                "counts": {cls: entry["counts"][cls] for cls in CLASSES},
                "marginal_trials": entry["marginal"],
                "diagonal_resamples": entry["resamples"],
                "audited": entry["audited"],
                "proportions": props,
            }
        return {
            "seed": self.seed,
            "trials": self.trials,
            "ns": list(self.ns),
            "audit_fraction": AUDIT_FRACTION,
            "radius_band": RADIUS_BAND,
            "per_n": body,
        }


def run_table1(
    seed: int,
    trials: int,
    ns: tuple[int, ...] = (2, 3, 4, 5),
    workers: int | None = None,
) -> Table1Report:
    """Classify `trials` random systems per order and tally the outcomes.

    The result is a pure function of (seed, trials, ns): work is cut into
    fixed-size chunks whose per-trial substreams do not depend on how the
    chunks are scheduled, and chunk results are merged by integer
    addition. `workers` only selects the degree of parallelism.
    """
    if trials < 1:
        raise ValueError("trials >= 1 required")
    ns = tuple(sorted(set(int(n) for n in ns)))
    if any(n < 2 for n in ns):
        raise ValueError("orders must be >= 2")
    tasks = [
        (seed, n, start, min(start + _CHUNK, trials))
        for n in ns
        for start in range(0, trials, _CHUNK)
    ]
    if workers is None or workers <= 1:
        results = [_classify_chunk(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_classify_chunk, *t) for t in tasks]
            results = [f.result() for f in futures]
    per_n = {
        n: {"counts": dict.fromkeys(CLASSES, 0), "marginal": 0, "resamples": 0, "audited": 0}
        for n in ns
    }
    for task, res in zip(tasks, results):
        entry = per_n[task[1]]
        for cls in CLASSES:
            entry["counts"][cls] += res["counts"][cls]
        entry["marginal"] += res["marginal"]
        entry["resamples"] += res["resamples"]
        entry["audited"] += res["audited"]
    return Table1Report(seed=seed, trials=trials, ns=ns, per_n=per_n)
