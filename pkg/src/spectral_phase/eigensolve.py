"""Eigenvalue counting and bisection on principal N x N sections of the operator."""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from . import _backend
from .model import ModulationParams

DEFAULT_TOL = 1e-10
MAX_BISECT = 200


@dataclass(frozen=True, eq=False)
class Truncation:
    """Symmetric tridiagonal section: diagonal ``1..N``, off-diagonal ``w_1..w_{N-1}``."""

    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def N(self) -> int:
        return len(self.diag)

    @property
    def pivmin(self) -> float:
        # smallest admissible |pivot| in the Sturm recurrence
        big = float(np.max(self.offdiag ** 2)) if len(self.offdiag) else 0.0
        return sys.float_info.min * max(1.0, big)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True, eq=False)
class EigenvalueSet:
    values: np.ndarray
    widths: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def truncation(params: ModulationParams, N: int) -> Truncation:
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(1, N + 1, dtype=np.float64)
    c = np.where(np.arange(1, N) % 2 == 1, params.c1, params.c2)
    return Truncation(n, c * n[:-1])


def count_below(trunc: Truncation, x: float) -> int:
    """Number of eigenvalues strictly below ``x`` (negative pivots of ``T - x``)."""
    return int(_backend.kernels.sturm_count(trunc.diag, trunc.offdiag, float(x), trunc.pivmin))


def eigenvalues_by_index(trunc: Truncation, lo: float, hi: float, j0: int, j1: int,
                         tol: float = DEFAULT_TOL) -> EigenvalueSet:
    """Eigenvalues ``j0..j1-1`` (0-based, ascending), each bisected independently from ``[lo, hi)``.

    Every index is refined on its own, so splitting an index range into chunks
    gives bit-identical results.
    """
    values = np.empty(max(j1 - j0, 0))
    widths = np.empty(max(j1 - j0, 0))
    if j1 > j0:
        _backend.kernels.bisect_eigenvalues(
            trunc.diag, trunc.offdiag, float(lo), float(hi), j0, j1,
            float(tol), MAX_BISECT, trunc.pivmin, values, widths,
        )
    return EigenvalueSet(values, widths)


def eigenvalues_in(trunc: Truncation, lo: float, hi: float, tol: float = DEFAULT_TOL) -> EigenvalueSet:
    """All eigenvalues in ``[lo, hi)``, each bracketed to width ``<= tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not hi > lo:
        return EigenvalueSet(np.empty(0), np.empty(0))
    return eigenvalues_by_index(trunc, lo, hi, count_below(trunc, lo), count_below(trunc, hi), tol)


def smallest_eigenvalue(trunc: Truncation, tol: float = DEFAULT_TOL) -> float:
    # (T e1, e1) = q_1 bounds the minimum from above
    hi = float(trunc.diag[0]) + 1.0
    step = 1.0
    lo = hi - step
    while count_below(trunc, lo) > 0:
        step *= 2.0
        lo = hi - step
    return float(eigenvalues_in(trunc, lo, hi, tol).values[0])
