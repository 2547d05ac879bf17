"""Closed-form spectrum when one modulation parameter vanishes.

With ``c1 * c2 = 0`` the matrix splits into 2 x 2 blocks (and a leading 1 x 1
block ``[1]`` when ``c1 = 0``), so every eigenvalue is explicit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Tuple

import mpmath
import numpy as np

from .errors import IndexOutOfRange, WrongRegion
from .model import ModulationParams


class DegenerateVariant(enum.Enum):
    C2_ZERO = "c2-zero"
    C1_ZERO = "c1-zero"


@dataclass(frozen=True)
class DegenerateSpec:
    variant: DegenerateVariant
    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")

    @classmethod
    def from_params(cls, params: ModulationParams) -> "DegenerateSpec":
        c1, c2 = abs(params.c1), abs(params.c2)
        if c1 * c2 != 0 or c1 == c2 == 0:
            raise WrongRegion(f"{params} is not degenerate with c != 0")
        if c2 == 0:
            return cls(DegenerateVariant.C2_ZERO, c1)
        return cls(DegenerateVariant.C1_ZERO, c2)

    def params(self) -> ModulationParams:
        if self.variant is DegenerateVariant.C2_ZERO:
            return ModulationParams(self.c, 0.0)
        return ModulationParams(0.0, self.c)


def block(spec: DegenerateSpec, n: int) -> np.ndarray:
    if n < 1:
        raise IndexOutOfRange("block index must be >= 1")
    if spec.variant is DegenerateVariant.C2_ZERO:
        m = 2 * n - 1
        return np.array([[m, spec.c * m], [spec.c * m, m + 1]], dtype=float)
    if n == 1:
        return np.array([[1.0]])
    m = 2 * n - 2
    return np.array([[m, spec.c * m], [spec.c * m, m + 1]], dtype=float)


def eigenvalue_pair(spec: DegenerateSpec, n: int) -> Tuple[float, float]:
    """``(minus, plus)`` eigenvalues of the ``n``-th 2 x 2 block."""
    if n < 1 or (spec.variant is DegenerateVariant.C1_ZERO and n == 1):
        raise IndexOutOfRange(f"no 2x2 block with index {n} for {spec.variant.value}")
    m = 2 * n - 1 if spec.variant is DegenerateVariant.C2_ZERO else 2 * n - 2
    # block [[m, c m], [c m, m + 1]]: trace 2m + 1, det m (m + 1) - c^2 m^2
    root = math.sqrt(4.0 * spec.c ** 2 * m * m + 1.0)
    plus = (2 * m + 1 + root) / 2.0
    minus = (m * (m + 1) - spec.c ** 2 * m * m) / plus
    return minus, plus


def spectrum(spec: DegenerateSpec, n_max: int) -> List[float]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out: List[float] = []
    start = 1
    if spec.variant is DegenerateVariant.C1_ZERO:
        out.append(1.0)
        start = 2
    for n in range(start, n_max + 1):
        out.extend(eigenvalue_pair(spec, n))
    return sorted(out)


def expansion_residual(spec: DegenerateSpec, n: int) -> float:
    """``|minus eigenvalue - (2(1-c) n + const - 1/(16 c n))|``, evaluated in 40-digit arithmetic.

    The constant is ``c - 1/2`` for ``C2_ZERO`` and ``2c - 3/2`` for ``C1_ZERO``.
    """
    if n < 1 or (spec.variant is DegenerateVariant.C1_ZERO and n == 1):
        raise IndexOutOfRange(f"no 2x2 block with index {n}")
    with mpmath.workdps(40):
        c = mpmath.mpf(spec.c)
        nn = mpmath.mpf(n)
        if spec.variant is DegenerateVariant.C2_ZERO:
            exact = (4 * nn - 1 - mpmath.sqrt(4 * c ** 2 * (2 * nn - 1) ** 2 + 1)) / 2
            const = c - mpmath.mpf(1) / 2
        else:
            exact = (4 * nn - 3 - mpmath.sqrt(4 * c ** 2 * (2 * nn - 2) ** 2 + 1)) / 2
            const = 2 * c - mpmath.mpf(3) / 2
        approx = 2 * (1 - c) * nn + const - 1 / (16 * c * nn)
        return float(abs(exact - approx))
