"""Generalized eigenvectors: the three-term recurrence in log-scaled arithmetic.

A generalized eigenvector for the spectral parameter ``lam`` solves

    w_{n-1} u_{n-1} + (q_n - lam) u_n + w_n u_{n+1} = 0,    n >= 2.

Solutions grow or decay geometrically, so values are kept as a sign and a
natural log of the magnitude. The running pair inside the kernels is rescaled
by exact powers of two, which never perturbs the mantissas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from . import _backend
from .errors import DegenerateWeight, NoConvergence, PoleAtDiagonal
from .model import ModulationParams


@dataclass(frozen=True)
class LogScaledValue:
    """A real number stored as ``sign * exp(logmag)``; zero has ``logmag = -inf``."""

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if (self.sign == 0) != (self.logmag == -math.inf):
            raise ValueError("sign 0 must pair with logmag -inf and vice versa")

    @classmethod
    def from_float(cls, x: float) -> "LogScaledValue":
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        """Convert back; overflows to ``+-inf`` or underflows to zero."""
        if self.sign == 0:
            return 0.0
        if self.logmag > 709.78:
            return self.sign * math.inf
        return self.sign * math.exp(self.logmag)

    def __neg__(self) -> "LogScaledValue":
        return LogScaledValue(-self.sign, self.logmag)

    def __mul__(self, other) -> "LogScaledValue":
        if not isinstance(other, LogScaledValue):
            other = LogScaledValue.from_float(float(other))
        sign = self.sign * other.sign
        if sign == 0:
            return ZERO
        return LogScaledValue(sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __add__(self, other) -> "LogScaledValue":
        if not isinstance(other, LogScaledValue):
            other = LogScaledValue.from_float(float(other))
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        ref = max(self.logmag, other.logmag)
        x = self.sign * math.exp(self.logmag - ref) + other.sign * math.exp(other.logmag - ref)
        if x == 0.0:
            return ZERO
        return LogScaledValue(1 if x > 0 else -1, math.log(abs(x)) + ref)

    __radd__ = __add__

    def __sub__(self, other) -> "LogScaledValue":
        if not isinstance(other, LogScaledValue):
            other = LogScaledValue.from_float(float(other))
        return self + (-other)


ZERO = LogScaledValue(0, -math.inf)


@dataclass(frozen=True, eq=False)
class ScaledSequence:
    """A finite real sequence stored as parallel sign / log-magnitude arrays.

    Python indexing is zero-based: ``seq[0]`` is the first term (``u_1``).
    """

    signs: np.ndarray
    logmag: np.ndarray

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i: int) -> LogScaledValue:
        s = int(self.signs[i])
        return LogScaledValue(s, float(self.logmag[i]) if s else -math.inf)

    @property
    def values(self) -> List[LogScaledValue]:
        return [self[i] for i in range(len(self))]

    def is_zero(self) -> bool:
        return not np.any(self.signs)

    def log10_abs(self) -> np.ndarray:
        return self.logmag / math.log(10.0)

    def to_floats(self) -> np.ndarray:
        """De-scale to plain floats (may overflow to inf for long growing traces)."""
        with np.errstate(over="ignore"):
            return self.signs * np.exp(self.logmag)

    def scaled(self, ref: float) -> np.ndarray:
        """Values divided by ``exp(ref)``."""
        with np.errstate(over="ignore"):
            return self.signs * np.exp(self.logmag - ref)


@dataclass(frozen=True, eq=False)
class SolutionTrace(ScaledSequence):
    """Values ``u_1..u_N`` of one generalized eigenvector."""

    params: ModulationParams = field(default=None)
    lam: float = 0.0
    direction: str = "forward"


@dataclass(frozen=True)
class TransferStep:
    """Maps ``(u_{n-1}, u_n)`` to ``(u_n, u_{n+1})``."""

    matrix: np.ndarray
    determinant: float


@dataclass(frozen=True)
class DecoupledCoeffs:
    """Coefficients of the odd (p1, p2) and even (r1, r2) two-step recurrences at ``k``."""

    p1: float
    p2: float
    r1: float
    r2: float


def transfer_step(params: ModulationParams, lam: float, n: int) -> TransferStep:
    if n < 1:
        raise ValueError("n must be >= 1")
    w_prev, w_n = params.weight(n - 1), params.weight(n)
    if w_n == 0.0:
        raise DegenerateWeight(f"weight w_{n} vanishes for {params}")
    mat = np.array([[0.0, 1.0], [-w_prev / w_n, (lam - n) / w_n]])
    return TransferStep(mat, w_prev / w_n)


def _require_weights(params: ModulationParams, lo: int, hi: int) -> None:
    """Raise unless ``w_m != 0`` for every ``lo <= m < hi``."""
    for m in (lo, lo + 1):
        if m < hi and params.weight(m) == 0.0:
            raise DegenerateWeight(f"weight w_{m} vanishes for {params}")


def forward_solve(
    params: ModulationParams, lam: float, u1: float, u2: float, N: int
) -> SolutionTrace:
    """Iterate the recurrence upwards from the initial data ``(u1, u2)``."""
    if N < 2:
        raise ValueError("N must be >= 2")
    _require_weights(params, 2, N)
    signs = np.zeros(N, dtype=np.int8)
    logmag = np.empty(N, dtype=np.float64)
    _backend.kernels.forward_recurrence(
        float(params.c1), float(params.c2), float(lam), float(u1), float(u2), signs, logmag
    )
    return SolutionTrace(signs, logmag, params, float(lam), "forward")


def _backward_once(params: ModulationParams, lam: float, N: int, M: int) -> Tuple[np.ndarray, np.ndarray]:
    signs = np.zeros(N, dtype=np.int8)
    logmag = np.empty(N, dtype=np.float64)
    _backend.kernels.backward_recurrence(
        float(params.c1), float(params.c2), float(lam), int(M), signs, logmag
    )
    return _normalize(signs, logmag)


def _normalize(signs: np.ndarray, logmag: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Scale so the last two entries have unit Euclidean norm, larger one positive."""
    tail_l = logmag[-2:]
    tail_s = signs[-2:]
    if not np.any(tail_s):
        return signs, logmag
    ref = float(np.max(tail_l))
    norm = ref + 0.5 * math.log(float(np.sum(np.exp(2.0 * (tail_l - ref)) * (tail_s != 0))))
    flip = int(tail_s[int(np.argmax(np.where(tail_s != 0, tail_l, -np.inf)))])
    out_l = np.where(signs != 0, logmag - norm, -np.inf)
    return (signs * flip).astype(np.int8), out_l


def _local_mismatch(a_s, a_l, b_s, b_l) -> float:
    """Largest difference between two sequences relative to the local size of ``b``."""
    nb = np.where(b_s != 0, b_l, -np.inf)
    ref = np.maximum(nb, np.concatenate([nb[1:], nb[-2:-1]]))
    ref = np.where(np.isfinite(ref), ref, 0.0)
    diff = a_s * np.exp(a_l - ref) - b_s * np.exp(b_l - ref)
    return float(np.max(np.abs(diff)))


def backward_minimal(
    params: ModulationParams,
    lam: float,
    N: int,
    rel_tol: float = 1e-10,
    max_factor: int = 64,
) -> SolutionTrace:
    """Minimal (subordinate) solution by backward recursion with start-index doubling.

    Starts at ``M = 2N`` from ``(u_{M+1}, u_M) = (0, 1)`` and doubles ``M`` until two
    consecutive runs agree on ``u_1..u_N`` to ``rel_tol`` (measured against the local
    magnitude). Gives up at ``M > max_factor * N`` with :class:`NoConvergence`,
    which is what happens inside absolutely continuous spectrum.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    _require_weights(params, 1, max_factor * N)
    prev = None
    M = 2 * N
    worst = math.inf
    while M <= max_factor * N:
        cur = _backward_once(params, lam, N, M)
        if prev is not None:
            worst = _local_mismatch(prev[0], prev[1], cur[0], cur[1])
            if worst <= rel_tol:
                return SolutionTrace(cur[0], cur[1], params, float(lam), "backward")
        prev = cur
        M *= 2
    raise NoConvergence(
        f"backward recursion for {params}, lam={lam} did not settle by M={max_factor * N} "
        f"(last mismatch {worst:.3g}); lam is likely in absolutely continuous spectrum"
    )


def _two_step_coeffs(params: ModulationParams, lam: float, m: int) -> Tuple[float, float]:
    """Coefficients of ``x_{j+2} + A x_{j+1} + B x_j = 0`` for the subsequence starting at index ``m - 1``.

    ``m = 2k`` gives the odd-index recurrence, ``m = 2k + 1`` the even-index one.
    """
    w = params.weight
    if m == lam:
        raise PoleAtDiagonal(f"lam = q_{m} = {m}")
    if w(m + 1) == 0.0 or w(m + 2) == 0.0:
        raise DegenerateWeight(f"weights w_{m + 1}, w_{m + 2} must be nonzero")
    ratio = (m + 2 - lam) / (m - lam)
    denom = w(m + 1) * w(m + 2)
    a = ratio * w(m) ** 2 / denom - (m + 1 - lam) * (m + 2 - lam) / denom + w(m + 1) / w(m + 2)
    b = ratio * w(m - 1) * w(m) / denom
    return a, b


def decoupled_coeffs(params: ModulationParams, lam: float, k: int) -> DecoupledCoeffs:
    """``P1(k), P2(k)`` for ``v_k = u_{2k-1}`` and ``R1(k), R2(k)`` for ``w_k = u_{2k}``.

    The even-index coefficients are the odd-index formulas with every matrix
    index shifted up by one (``k -> k + 1/2`` in index terms).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    p1, p2 = _two_step_coeffs(params, lam, 2 * k)
    r1, r2 = _two_step_coeffs(params, lam, 2 * k + 1)
    return DecoupledCoeffs(p1, p2, r1, r2)


def odd_even_split(trace: ScaledSequence) -> Tuple[ScaledSequence, ScaledSequence]:
    """``v_k = u_{2k-1}`` and ``w_k = u_{2k}``."""
    return (
        ScaledSequence(trace.signs[0::2], trace.logmag[0::2]),
        ScaledSequence(trace.signs[1::2], trace.logmag[1::2]),
    )


def _relative_residuals(terms_s: List[np.ndarray], terms_l: List[np.ndarray], norm_idx) -> np.ndarray:
    ls = [np.where(s != 0, l, -np.inf) for s, l in zip(terms_s, terms_l)]
    ref = np.max(np.vstack(ls), axis=0)
    ref = np.where(np.isfinite(ref), ref, 0.0)
    vals = [s * np.exp(l - ref) for s, l in zip(terms_s, ls)]
    total = np.abs(sum(vals))
    scale = np.max(np.vstack([np.abs(vals[i]) for i in norm_idx]), axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(scale > 0, total / scale, np.where(total > 0, np.inf, 0.0))
    return out


def _scaled_coeff(coef: np.ndarray, s: np.ndarray, l: np.ndarray):
    cs = np.sign(coef).astype(np.int8) * s
    with np.errstate(divide="ignore"):
        cl = l + np.log(np.abs(coef))
    return cs, cl


def recurrence_residuals(trace: SolutionTrace) -> np.ndarray:
    """Relative residual of each interior triple, ``n = 2..N-1``.

    Normalised by ``max(|w_{n-1} u_{n-1}|, |w_n u_{n+1}|)``.
    """
    p, lam = trace.params, trace.lam
    N = len(trace)
    n = np.arange(2, N)
    c = np.where(n % 2 == 1, p.c1, p.c2)
    cprev = np.where((n - 1) % 2 == 1, p.c1, p.c2)
    s, l = trace.signs, trace.logmag
    t0 = _scaled_coeff(cprev * (n - 1), s[:-2], l[:-2])
    t1 = _scaled_coeff(n - lam, s[1:-1], l[1:-1])
    t2 = _scaled_coeff(c * n, s[2:], l[2:])
    return _relative_residuals([t0[0], t1[0], t2[0]], [t0[1], t1[1], t2[1]], (0, 2))


def decoupled_residuals(params: ModulationParams, lam: float, seq: ScaledSequence, parity: str) -> np.ndarray:
    """Relative residuals of ``x_{k+2} + A(k) x_{k+1} + B(k) x_k`` for ``parity`` ``"odd"`` or ``"even"``.

    Normalised by the largest of the three terms.
    """
    shift = {"odd": 0, "even": 1}[parity]
    K = len(seq)
    k = np.arange(1, K - 1)
    coeffs = np.array([_two_step_coeffs(params, lam, 2 * kk + shift) for kk in k]).reshape(-1, 2)
    s, l = seq.signs, seq.logmag
    t0 = _scaled_coeff(coeffs[:, 1], s[:-2], l[:-2])
    t1 = _scaled_coeff(coeffs[:, 0], s[1:-1], l[1:-1])
    t2 = (s[2:], l[2:])
    return _relative_residuals([t0[0], t1[0], t2[0]], [t0[1], t1[1], t2[1]], (0, 1, 2))


def wronskian(a: SolutionTrace, b: SolutionTrace) -> ScaledSequence:
    """Discrete Wronskian ``w_n (a_n b_{n+1} - a_{n+1} b_n)`` for ``n = 1..N-1``.

    Constant in ``n`` for any two solutions of the same recurrence.
    """
    p = a.params
    N = min(len(a), len(b))
    n = np.arange(1, N)
    wn = np.where(n % 2 == 1, p.c1, p.c2) * n
    l1 = a.logmag[: N - 1] + b.logmag[1:N]
    l2 = a.logmag[1:N] + b.logmag[: N - 1]
    s1 = a.signs[: N - 1] * b.signs[1:N]
    s2 = a.signs[1:N] * b.signs[: N - 1]
    l1 = np.where(s1 != 0, l1, -np.inf)
    l2 = np.where(s2 != 0, l2, -np.inf)
    ref = np.maximum(l1, l2)
    ref = np.where(np.isfinite(ref), ref, 0.0)
    x = wn * (s1 * np.exp(l1 - ref) - s2 * np.exp(l2 - ref))
    signs = np.sign(x).astype(np.int8)
    with np.errstate(divide="ignore"):
        logs = np.where(signs != 0, np.log(np.abs(x)) + ref, -np.inf)
    return ScaledSequence(signs, logs)
