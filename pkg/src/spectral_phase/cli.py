"""Command-line front end.

Every subcommand writes one JSON object or one CSV table to stdout; diagnostics
go to stderr. Floats are printed with 17 significant digits and unbounded
interval endpoints as ``null``.

Exit codes: 0 success, 2 usage or precondition error, 3 numerical
non-convergence, 4 excluded point (``lam = 1/2`` on a critical line).
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import analysis, asymptotics, degenerate, eigensolve, recurrence
from .errors import (
    AmbiguousClassification,
    HalfLineResonance,
    NoConvergence,
    SpectralPhaseError,
    UnstableCount,
)
from .model import DEFAULT_TOL, ModulationParams, bands, classify, discriminant

EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_EXCLUDED = 4

THREADS_ENV = "SPECTRAL_PHASE_THREADS"


class UsageError(SpectralPhaseError):
    pass


# ---------------------------------------------------------------- formatting


def fmt_float(x: float) -> str:
    # adding 0.0 folds -0.0 into 0.0 so the text re-parses to the same value
    return format(float(x) + 0.0, ".17g")


def dumps(obj: Any) -> str:
    """JSON with fixed 17-digit floats and insertion-ordered keys."""
    if obj is None or (isinstance(obj, float) and not math.isfinite(obj)):
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return fmt_float(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, enum.Enum):
        return dumps(obj.value)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def resolve_threads(requested: Optional[int]) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            requested = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}")
    if requested is None:
        requested = os.cpu_count() or 1
    return max(1, int(requested))


# ---------------------------------------------------------------- commands


def _params(c1: float, c2: float) -> ModulationParams:
    try:
        return ModulationParams(float(c1), float(c2))
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_classify(c1: float, c2: float, tol: float = DEFAULT_TOL) -> Dict[str, Any]:
    p = _params(c1, c2)
    region = classify(p, tol)
    d0 = a0 = None
    if not p.degenerate():
        d0 = discriminant(p, 0.0)
        a0 = asymptotics.ba_coefficients(p, 0.0).a0
    b = bands(p)
    return {
        "region": region.tag.value,
        "d0": d0,
        "a0": a0,
        "bands": [list(iv) for iv in b.intervals],
        "ac_interval": list(region.ac_interval) if region.ac_interval else None,
        "pp_interval": list(region.pp_interval) if region.pp_interval else None,
    }


def cmd_solve(
    c1: float, c2: float, lam: float, n: int, mode: str = "forward",
    u1: float = 1.0, u2: float = 0.0, rel_tol: float = 1e-10,
) -> List[List[Any]]:
    p = _params(c1, c2)
    if n < 2:
        raise UsageError("--n must be >= 2")
    if mode == "forward":
        trace = recurrence.forward_solve(p, lam, u1, u2, n)
    elif mode == "backward":
        trace = recurrence.backward_minimal(p, lam, n, rel_tol)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    log10 = trace.log10_abs()
    return [[i + 1, int(trace.signs[i]), float(log10[i])] for i in range(len(trace))]


def cmd_asym(c1: float, c2: float, lam: float, tol: float = DEFAULT_TOL) -> Dict[str, Any]:
    p = _params(c1, c2)
    d = asymptotics.descriptor(p, lam, tol)
    return {
        "variant": d.variant.value,
        "alpha_plus": d.alpha_plus,
        "alpha_minus": d.alpha_minus,
        "beta_plus": d.beta_plus,
        "beta_minus": d.beta_minus,
        "delta_plus": d.delta_plus,
        "coupling_plus": d.coupling_plus,
        "coupling_minus": d.coupling_minus,
        "subordinate_exists": d.subordinate_exists,
    }


def cmd_spectrum(
    c1: float, c2: float, size: int, lo: float, hi: float,
    tol: float = eigensolve.DEFAULT_TOL, threads: Optional[int] = None,
) -> List[float]:
    p = _params(c1, c2)
    if size < 1:
        raise UsageError("--size must be >= 1")
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise UsageError(f"bad interval [{lo}, {hi})")
    if tol <= 0:
        raise UsageError("--tol must be positive")
    trunc = eigensolve.truncation(p, size)
    if hi <= lo:
        return []
    j0 = eigensolve.count_below(trunc, lo)
    j1 = eigensolve.count_below(trunc, hi)
    k = min(resolve_threads(threads), max(j1 - j0, 1))
    # split by eigenvalue index so the values do not depend on the thread count
    cuts = [j0 + (j1 - j0) * i // k for i in range(k + 1)]

    def piece(i: int) -> np.ndarray:
        return eigensolve.eigenvalues_by_index(trunc, lo, hi, cuts[i], cuts[i + 1], tol).values

    with ThreadPoolExecutor(max_workers=k) as pool:
        parts = list(pool.map(piece, range(k)))
    return [float(v) for part in parts for v in part]


def _grid(lo: float, hi: float, step: float) -> List[float]:
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)) or step <= 0 or hi < lo:
        raise UsageError(f"bad grid min={lo} max={hi} step={step}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) + 0.0 for i in range(n)]


def region_code(p: ModulationParams, tol: float) -> str:
    try:
        return classify(p, tol).tag.code
    except AmbiguousClassification:
        return "?"


def cmd_phase_diagram(
    lo: float, hi: float, step: float, tol: float = DEFAULT_TOL, threads: Optional[int] = None
) -> List[List[Any]]:
    values = _grid(lo, hi, step)

    def row(c1: float) -> List[List[Any]]:
        return [[c1, c2, region_code(ModulationParams(c1, c2), tol)] for c2 in values]

    with ThreadPoolExecutor(max_workers=resolve_threads(threads)) as pool:
        rows = list(pool.map(row, values))
    return [r for chunk in rows for r in chunk]


def cmd_witness(c1: float, c2: float, n_max: int) -> Dict[str, Any]:
    p = _params(c1, c2)
    found = analysis.pp_nonempty_certificate(p, n_max)
    n_report = found if found is not None else n_max
    u, rep = analysis.witness_vector(p, n_report)
    return {
        "found_n": found,
        "reported_n": n_report,
        "branch": rep.branch.value,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "holds": rep.holds,
        "shifted_form": analysis.shifted_form(p, u),
    }


def cmd_count(c1: float, c2: float, eps: float, size: int) -> Dict[str, Any]:
    p = _params(c1, c2)
    chk = analysis.count_bound_check(p, eps, size)
    return {
        "count": chk.count,
        "count_doubled": chk.count_doubled,
        "bound": chk.bound,
        "ok": chk.ok,
        "threshold": 0.5 - eps,
        "size": size,
    }


def cmd_degenerate(c: float, zero: str, n_max: int) -> List[float]:
    variant = {"c2": degenerate.DegenerateVariant.C2_ZERO, "c1": degenerate.DegenerateVariant.C1_ZERO}
    if zero not in variant:
        raise UsageError("--zero must be c1 or c2")
    try:
        spec = degenerate.DegenerateSpec(variant[zero], abs(float(c)))
    except ValueError as exc:
        raise UsageError(str(exc))
    return degenerate.spectrum(spec, n_max)


def cmd_semibounded(c1: float, c2: float, sizes: Sequence[int]) -> Dict[str, Any]:
    rep = analysis.semibounded_check(_params(c1, c2), sizes)
    return {
        "verdict": rep.verdict.value,
        "sizes": list(rep.sizes),
        "minima": list(rep.minima),
        "limit_estimate": rep.limit_estimate,
    }


def cmd_subordinacy(c1: float, c2: float, lam: float, n: int, theta_steps: int) -> Dict[str, Any]:
    rep = analysis.subordinacy_diagnostic(_params(c1, c2), lam, n, theta_steps)
    return {
        "label": rep.label,
        "sizes": list(rep.sizes),
        "ratios": list(rep.ratios),
        "decreasing": rep.decreasing,
    }


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spectral-phase",
        description="Spectral analysis of Jacobi matrices with q_n = n and weights c_n n.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def with_params(sp):
        sp.add_argument("--c1", type=float, required=True)
        sp.add_argument("--c2", type=float, required=True)
        return sp

    sp = with_params(sub.add_parser("classify", help="region of the parameter plane"))
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = with_params(sub.add_parser("solve", help="generalized eigenvector as CSV"))
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("forward", "backward"), default="forward")
    sp.add_argument("--u1", type=float, default=1.0)
    sp.add_argument("--u2", type=float, default=0.0)
    sp.add_argument("--rel-tol", type=float, default=1e-10)

    sp = with_params(sub.add_parser("asym", help="asymptotic descriptor of generalized eigenvectors"))
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = with_params(sub.add_parser("spectrum", help="truncation eigenvalues in [lo, hi)"))
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--tol", type=float, default=eigensolve.DEFAULT_TOL)
    sp.add_argument("--threads", type=int, default=None)

    sp = sub.add_parser("phase-diagram", help="region codes on a square grid")
    sp.add_argument("--min", dest="lo", type=float, default=-2.0)
    sp.add_argument("--max", dest="hi", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=0.05)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--threads", type=int, default=None)

    sp = with_params(sub.add_parser("witness", help="explicit vector with spectrum below 1/2"))
    sp.add_argument("--n-max", type=int, default=4096)

    sp = with_params(sub.add_parser("count", help="eigenvalue count below 1/2 - eps"))
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--size", type=int, default=2000)

    sp = sub.add_parser("degenerate", help="closed-form spectrum for c1*c2 = 0")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--zero", choices=("c1", "c2"), required=True)
    sp.add_argument("--n-max", type=int, required=True)

    sp = with_params(sub.add_parser("semibounded", help="truncation minima across sizes"))
    sp.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")], default=[100, 200, 400, 800, 1600])

    sp = with_params(sub.add_parser("subordinacy", help="heuristic subordinacy ratios"))
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--n", type=int, default=2000)
    sp.add_argument("--theta-steps", type=int, default=64)
    return ap


def _run(args: argparse.Namespace) -> str:
    c = args.command
    if c == "classify":
        return dumps(cmd_classify(args.c1, args.c2, args.tol))
    if c == "solve":
        rows = cmd_solve(args.c1, args.c2, args.lam, args.n, args.mode, args.u1, args.u2, args.rel_tol)
        return to_csv(("n", "sign", "log10_abs"), rows)
    if c == "asym":
        return dumps(cmd_asym(args.c1, args.c2, args.lam, args.tol))
    if c == "spectrum":
        vals = cmd_spectrum(args.c1, args.c2, args.size, args.lo, args.hi, args.tol, args.threads)
        return to_csv(("eigenvalue",), [[v] for v in vals])
    if c == "phase-diagram":
        rows = cmd_phase_diagram(args.lo, args.hi, args.step, args.tol, args.threads)
        return to_csv(("c1", "c2", "region_code"), rows)
    if c == "witness":
        return dumps(cmd_witness(args.c1, args.c2, args.n_max))
    if c == "count":
        return dumps(cmd_count(args.c1, args.c2, args.eps, args.size))
    if c == "degenerate":
        return to_csv(("eigenvalue",), [[v] for v in cmd_degenerate(args.c, args.zero, args.n_max)])
    if c == "semibounded":
        return dumps(cmd_semibounded(args.c1, args.c2, args.sizes))
    if c == "subordinacy":
        return dumps(cmd_subordinacy(args.c1, args.c2, args.lam, args.n, args.theta_steps))
    raise UsageError(f"unknown command {c}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = _run(args)
    except (NoConvergence, UnstableCount) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except HalfLineResonance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXCLUDED
    except (SpectralPhaseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
