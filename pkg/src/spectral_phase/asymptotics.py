"""Birkhoff-Adams data for the decoupled recurrences and empirical exponent fits.

Both two-step recurrences (for ``v_k = u_{2k-1}`` and ``w_k = u_{2k}``) have
coefficients ``a0 + a1/k + ...`` and ``b0 + b1/k + ...`` with

    a0 = (c1^2 + c2^2 - 1) / (c1 c2),   a1 = -a0/2 + (lam - 1/2) / (c1 c2),
    b0 = 1,                             b1 = -1.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateParams, HalfLineResonance, InsufficientData, NearDegenerateRoots
from .model import DEFAULT_TOL, ModulationParams
from .recurrence import ScaledSequence, odd_even_split

NEAR_DOUBLE_ROOT = 1e-6


@dataclass(frozen=True)
class BACoefficients:
    a0: float
    a1: float
    b0: float = 1.0
    b1: float = -1.0


class Variant(enum.Enum):
    POWER_LAW = "power-law"
    EXP_SQRT = "exp-sqrt"


@dataclass(frozen=True)
class AsymptoticDescriptor:
    """Leading asymptotics of the two solutions ``u+`` and ``u-``.

    Power law:  ``u_{2k-1} ~ alpha^k k^beta``.
    Exp-sqrt:   ``u_{2k-1} ~ alpha^k k^(-1/4) exp(delta sqrt(k))`` with a double root.
    In both cases ``u_{2k} ~ coupling * u_{2k-1}``.
    """

    variant: Variant
    alpha_plus: complex
    alpha_minus: complex
    beta_plus: complex
    beta_minus: complex
    delta_plus: Optional[complex]
    delta_minus: Optional[complex]
    coupling_plus: complex
    coupling_minus: complex
    subordinate_exists: bool


def ba_coefficients(params: ModulationParams, lam: float) -> BACoefficients:
    if params.degenerate():
        raise DegenerateParams(f"c1*c2 = 0 for {params}")
    c1, c2 = params.c1, params.c2
    a0 = (c1 * c1 + c2 * c2 - 1.0) / (c1 * c2)
    a1 = -a0 / 2.0 + (lam - 0.5) / (c1 * c2)
    return BACoefficients(a0, a1)


def characteristic_roots(coeffs: BACoefficients) -> Tuple[complex, complex]:
    """Roots of ``alpha^2 + a0 alpha + b0``, larger modulus first.

    For a complex-conjugate pair the root with positive imaginary part comes first.
    """
    a0, b0 = coeffs.a0, coeffs.b0
    disc = a0 * a0 - 4.0 * b0
    if disc > 0:
        # avoid cancellation: take the root with the larger modulus, get the other from the product
        big = (-a0 - math.copysign(math.sqrt(disc), a0)) / 2.0
        return complex(big), complex(b0 / big)
    if disc == 0:
        return complex(-a0 / 2.0), complex(-a0 / 2.0)
    im = math.sqrt(-disc) / 2.0
    return complex(-a0 / 2.0, im), complex(-a0 / 2.0, -im)


def descriptor(params: ModulationParams, lam: float, tol: float = DEFAULT_TOL) -> AsymptoticDescriptor:
    co = ba_coefficients(params, lam)
    c1, c2 = params.c1, params.c2
    gap = abs(abs(co.a0) - 2.0)
    if gap <= tol:
        if abs(lam - 0.5) <= tol:
            raise HalfLineResonance(f"lam = 1/2 on a critical line for {params}")
        alpha = -math.copysign(1.0, co.a0)
        # the double-root exponent: delta^2 = 4 (a0 a1 - 2 b1) / (2 b0) = 2 a0 (lam - 1/2) / (c1 c2)
        sq = 2.0 * math.copysign(2.0, co.a0) * (lam - 0.5) / (c1 * c2)
        delta = cmath.sqrt(complex(sq))
        if sq >= 0:
            delta = complex(delta.real, 0.0)
        coupling = complex(-(c1 + alpha * c2))
        return AsymptoticDescriptor(
            Variant.EXP_SQRT,
            complex(alpha),
            complex(alpha),
            complex(-0.25),
            complex(-0.25),
            delta,
            -delta,
            coupling,
            coupling,
            subordinate_exists=(sq > 0),
        )
    if gap < NEAR_DOUBLE_ROOT:
        warnings.warn(
            f"|a0| = {abs(co.a0):.12g} is within {gap:.2g} of 2; power-law exponents are ill-conditioned",
            NearDegenerateRoots,
            stacklevel=2,
        )
    ap, am = characteristic_roots(co)
    bp = (co.a1 * ap + co.b1) / (co.a0 * ap + 2.0 * co.b0)
    bm = (co.a1 * am + co.b1) / (co.a0 * am + 2.0 * co.b0)
    return AsymptoticDescriptor(
        Variant.POWER_LAW,
        ap,
        am,
        bp,
        bm,
        None,
        None,
        -(c1 + ap * c2),
        -(c1 + am * c2),
        subordinate_exists=abs(co.a0) > 2.0,
    )


def _odd_tail(trace: ScaledSequence, min_len: int):
    if len(trace) < min_len:
        raise InsufficientData(f"need at least {min_len} terms, got {len(trace)}")
    v, _ = odd_even_split(trace)
    K = len(v)
    k = np.arange(1, K + 1, dtype=float)
    keep = (k >= K // 2) & (v.signs != 0)
    if np.count_nonzero(keep) < 8:
        raise InsufficientData("too few nonzero terms in the second half of the trace")
    return k[keep], v.logmag[keep]


def fit_power_growth(trace: ScaledSequence) -> Tuple[float, float]:
    """Least-squares fit ``log|v_k| = k s + beta log k + const`` on the last half.

    Returns ``(s, beta)``; ``s`` estimates ``log|alpha|``.
    """
    k, y = _odd_tail(trace, 64)
    kc = k / k[-1]
    X = np.column_stack([kc, np.log(kc), np.ones_like(k)])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return float(coef[0] / k[-1]), float(coef[1])


def fit_expsqrt(trace: ScaledSequence) -> float:
    """Least-squares fit ``log|v_k| + log(k)/4 = delta sqrt(k) + const`` on the last half."""
    k, y = _odd_tail(trace, 256)
    s = np.sqrt(k)
    X = np.column_stack([s, np.ones_like(s)])
    coef, *_ = np.linalg.lstsq(X, y + 0.25 * np.log(k), rcond=None)
    return float(coef[0])


def coupling_check(trace: ScaledSequence, desc: AsymptoticDescriptor) -> float:
    """Extrapolated limit of ``u_{2k} / u_{2k-1}``.

    Fits ``ratio = C + D / k`` (power law) or ``C + D / sqrt(k)`` (exp-sqrt)
    on the last half and returns ``C``.
    """
    if len(trace) < 64:
        raise InsufficientData(f"need at least 64 terms, got {len(trace)}")
    v, w = odd_even_split(trace)
    K = min(len(v), len(w))
    k = np.arange(1, K + 1, dtype=float)
    ok = (v.signs[:K] != 0) & (k >= K // 2)
    if np.count_nonzero(ok) < 8:
        raise InsufficientData("too few nonzero odd terms")
    ratio = (w.signs[:K] * v.signs[:K] * np.exp(w.logmag[:K] - v.logmag[:K]))[ok]
    kk = k[ok]
    corr = 1.0 / kk if desc.variant is Variant.POWER_LAW else 1.0 / np.sqrt(kk)
    X = np.column_stack([np.ones_like(kk), corr])
    coef, *_ = np.linalg.lstsq(X, ratio, rcond=None)
    return float(coef[0])
