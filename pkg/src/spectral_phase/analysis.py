"""Quadratic forms, semiboundedness and eigenvalue-count certificates, subordinacy heuristic."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from . import eigensolve
from .errors import CertificateMismatch, DegenerateWeight, UnstableCount, WrongRegion
from .model import DEFAULT_TOL, ModulationParams, Region, classify
from .recurrence import forward_solve


@dataclass(frozen=True, eq=False)
class FiniteVector:
    """Finitely supported vector ``u_1..u_L`` (zero beyond ``L``)."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def L(self) -> int:
        return len(self.values)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


class WitnessBranch(enum.Enum):
    C1_GREATER = "c1-greater"
    C1_LESS = "c1-less"


@dataclass(frozen=True)
class WitnessReport:
    """Inequality ``lhs < rhs`` certifying a negative direction of ``J - 1/2``."""

    N: int
    lhs: float
    rhs: float
    branch: WitnessBranch

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs


def quadratic_form(params: ModulationParams, u: FiniteVector) -> float:
    """``(Ju, u) = sum n |u_n|^2 + 2 sum w_n Re(u_n conj(u_{n+1}))``."""
    x = u.values
    L = len(x)
    if L == 0:
        return 0.0
    n = np.arange(1, L + 1, dtype=float)
    diag = float(np.sum(n * np.abs(x) ** 2))
    if L == 1:
        return diag
    w = np.where(n[:-1] % 2 == 1, params.c1, params.c2) * n[:-1]
    cross = float(np.sum(w * np.real(x[:-1] * np.conj(x[1:]))))
    return diag + 2.0 * cross


def shifted_form(params: ModulationParams, u: FiniteVector) -> float:
    """Quadratic form of ``J - 1/2``."""
    return quadratic_form(params, u) - 0.5 * u.norm2()


def _harmonic_tail(N: int) -> np.ndarray:
    """``v_n = sum_{k=n}^N 1/k`` for ``n = 1..N+1`` (last entry zero)."""
    inv = 1.0 / np.arange(1, N + 1, dtype=float)
    tail = np.cumsum(inv[::-1])[::-1]
    return np.append(tail, 0.0)


def _case_c_check(params: ModulationParams, tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    x, y = abs(params.c1), abs(params.c2)
    if params.degenerate() or abs(x + y - 1.0) > tol:
        raise WrongRegion(f"{params} is not on the line |c1| + |c2| = 1 with c1*c2 != 0")
    if abs(x - y) <= tol:
        raise WrongRegion(f"|c1| = |c2| for {params}: no spectrum below 1/2")
    return x, y


def _gauge(params: ModulationParams, u: np.ndarray) -> np.ndarray:
    """Carry a vector built for ``(|c1|, |c2|)`` over to the signed parameters.

    ``s_1 = 1``, ``s_{n+1} = s_n sign(c_n)`` makes ``w_n s_n s_{n+1} = |w_n|``.
    """
    L = len(u)
    n = np.arange(1, L)
    c = np.where(n % 2 == 1, params.c1, params.c2)
    s = np.concatenate([[1.0], np.cumprod(np.sign(c))])
    return u * s


def witness_vector(params: ModulationParams, N: int) -> Tuple[FiniteVector, WitnessReport]:
    """Explicit vector on which ``J - 1/2`` should be negative, built from ``v_n = sum_{k=n}^N 1/k``."""
    c1, c2 = _case_c_check(params)
    if N < 1:
        raise ValueError("N must be >= 1")
    v = _harmonic_tail(N)  # v[0] = v_1, ..., v[N] = v_{N+1} = 0
    k = np.arange(1, N + 1, dtype=float)
    u = np.empty(2 * N)
    dv = v[:-1] - v[1:]
    if c1 > c2:
        u[0::2] = v[:-1]
        u[1::2] = -v[1:]
        lhs = c1 * float(np.sum((2 * k - 1) * dv ** 2))
        rhs = (c1 - c2) / 2.0 * v[0] ** 2
        branch = WitnessBranch.C1_GREATER
    else:
        u[0::2] = v[:-1]
        u[1::2] = -v[:-1]
        u[0] = 2.0 * c1 * v[0]
        lhs = c2 * float(np.sum(2 * k * dv ** 2))
        rhs = (c1 - c2) ** 2 / 2.0 * v[0] ** 2
        branch = WitnessBranch.C1_LESS
    return FiniteVector(_gauge(params, u)), WitnessReport(N, lhs, rhs, branch)


def pp_nonempty_certificate(params: ModulationParams, N_max: int) -> Optional[int]:
    """Smallest ``N`` in ``1, 2, 4, ... <= N_max`` whose witness makes ``J - 1/2`` negative.

    A found witness is cross-checked against the eigenvalue count of the
    ``2N + 2`` truncation; disagreement raises :class:`CertificateMismatch`.
    """
    _case_c_check(params)
    N = 1
    while N <= N_max:
        u, _ = witness_vector(params, N)
        if shifted_form(params, u) < 0.0:
            trunc = eigensolve.truncation(params, 2 * N + 2)
            if eigensolve.count_below(trunc, 0.5) < 1:
                raise CertificateMismatch(f"witness N={N} negative but no truncation eigenvalue below 1/2")
            return N
        N *= 2
    return None


@dataclass(frozen=True)
class CountCheck:
    count: int
    count_doubled: int
    bound: float

    @property
    def ok(self) -> bool:
        return self.count <= self.bound


def count_bound_check(params: ModulationParams, eps: float, N: int) -> CountCheck:
    """Truncation count below ``1/2 - eps`` against the bound ``1/eps``, with an ``N -> 2N`` stability check."""
    if classify(params).tag is not Region.CRITICAL_C:
        raise WrongRegion(f"{params} is not in case (c)")
    if not 0.0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    x = 0.5 - eps
    count = eigensolve.count_below(eigensolve.truncation(params, N), x)
    count2 = eigensolve.count_below(eigensolve.truncation(params, 2 * N), x)
    if count != count2:
        raise UnstableCount(f"count below {x} changed from {count} (N={N}) to {count2} (N={2 * N})")
    return CountCheck(count, count2, 1.0 / eps)


class Verdict(enum.Enum):
    SEMIBOUNDED = "semibounded-below"
    NOT_SEMIBOUNDED = "not-semibounded"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SemiboundedReport:
    verdict: Verdict
    sizes: Tuple[int, ...]
    minima: Tuple[float, ...]
    limit_estimate: Optional[float] = None


STABLE_REL = 1e-6
GEOMETRIC_RATE = 0.75


def semibounded_check(params: ModulationParams, sizes: Sequence[int]) -> SemiboundedReport:
    """Classify by the behaviour of truncation minima as the size grows.

    Not semibounded: every doubling more than doubles a negative minimum.
    Semibounded: the last relative change is below ``1e-6``, or the decrements
    shrink geometrically (rate <= 0.75 over the last two doublings) so the
    minima converge to the reported ``limit_estimate``. In case (c) the minima
    must also respect the lower bound ``min(|c1|, |c2|)``.
    """
    sizes = tuple(int(s) for s in sizes)
    if list(sizes) != sorted(set(sizes)):
        raise ValueError("sizes must be strictly increasing")
    minima = tuple(eigensolve.smallest_eigenvalue(eigensolve.truncation(params, N)) for N in sizes)
    verdict = Verdict.INCONCLUSIVE
    limit = None
    if len(minima) >= 2:
        pairs = list(zip(minima[:-1], minima[1:]))
        drops = [a - b for a, b in pairs]
        if all(a < 0 and b < 2.0 * a for a, b in pairs):
            verdict = Verdict.NOT_SEMIBOUNDED
        elif abs(drops[-1]) <= STABLE_REL * max(1.0, abs(minima[-1])):
            verdict, limit = Verdict.SEMIBOUNDED, minima[-1]
        elif len(drops) >= 3 and all(0 <= d1 <= GEOMETRIC_RATE * d0 for d0, d1 in zip(drops[-3:-1], drops[-2:])):
            rate = drops[-1] / drops[-2]
            verdict, limit = Verdict.SEMIBOUNDED, minima[-1] - drops[-1] * rate / (1.0 - rate)
        if verdict is Verdict.SEMIBOUNDED and not params.degenerate():
            if classify(params).tag is Region.CRITICAL_C:
                floor = min(abs(params.c1), abs(params.c2)) - 1e-8
                if min(minima) < floor:
                    verdict, limit = Verdict.INCONCLUSIVE, None
    return SemiboundedReport(verdict, sizes, minima, limit)


@dataclass(frozen=True)
class SubordinacyReport:
    """Heuristic only: a finite computation cannot decide subordinacy.

    ``ratios[i]`` is ``min_theta ||u^theta||_M / median_theta ||u^theta||_M`` at ``M = sizes[i]``.
    """

    sizes: Tuple[int, ...]
    ratios: Tuple[float, ...]
    label: str = field(default="heuristic")

    @property
    def decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.ratios[:-1], self.ratios[1:]))


def subordinacy_diagnostic(params: ModulationParams, lam: float, N: int, theta_steps: int = 64) -> SubordinacyReport:
    """Compare partial norms of ``u^theta`` (initial data ``(cos theta, sin theta)``).

    By linearity ``u^theta = cos(theta) a + sin(theta) b`` with ``a, b`` the solutions
    for ``(1, 0)`` and ``(0, 1)``, so partial norms come from the 2 x 2 Gram matrix.
    The minimum over theta is taken exactly (least singular value of the pair); the median over
    a uniform grid of ``theta_steps`` angles in ``[0, pi)``.
    """
    if theta_steps < 8:
        raise ValueError("theta_steps must be >= 8")
    if N < 8:
        raise ValueError("N must be >= 8")
    if params.degenerate():
        raise DegenerateWeight(f"subordinacy needs c1*c2 != 0, got {params}")
    a = forward_solve(params, lam, 1.0, 0.0, N)
    b = forward_solve(params, lam, 0.0, 1.0, N)
    theta = np.pi * np.arange(theta_steps) / theta_steps
    sizes = (N // 4, N // 2, N)
    ratios = []
    for M in sizes:
        la = np.where(a.signs[:M] != 0, a.logmag[:M], -np.inf)
        lb = np.where(b.signs[:M] != 0, b.logmag[:M], -np.inf)
        ref = float(max(la.max(), lb.max()))
        x = a.signs[:M] * np.exp(la - ref)
        y = b.signs[:M] * np.exp(lb - ref)
        smin = float(np.linalg.svd(np.column_stack([x, y]), compute_uv=False)[-1])
        G = np.array([[x @ x, x @ y], [x @ y, y @ y]])
        c, s = np.cos(theta), np.sin(theta)
        norms2 = c * c * G[0, 0] + 2 * c * s * G[0, 1] + s * s * G[1, 1]
        ratios.append(smin / math.sqrt(float(np.median(norms2))))
    return SubordinacyReport(sizes, tuple(ratios))
