"""Matrix entries, the period-2 comparison operator and parameter-plane classification.

The operator acts on finitely supported sequences by

    (J u)_n = w_{n-1} u_{n-1} + q_n u_n + w_n u_{n+1},

with diagonal ``q_n = n`` and weights ``w_n = c_n n``, where ``c_n`` alternates
between ``c1`` (odd ``n``) and ``c2`` (even ``n``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import AmbiguousClassification, DegenerateParams

DEFAULT_TOL = 1e-9

Interval = Tuple[float, float]


@dataclass(frozen=True)
class ModulationParams:
    """The modulation pair ``(c1, c2)``."""

    c1: float
    c2: float

    def __post_init__(self):
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise ValueError(f"modulation parameters must be finite, got {self}")

    def degenerate(self) -> bool:
        return self.c1 * self.c2 == 0.0

    def normalize(self) -> "ModulationParams":
        return ModulationParams(abs(self.c1), abs(self.c2))

    def coefficient(self, n: int) -> float:
        """Modulation factor ``c_n`` (``c1`` for odd ``n``, ``c2`` for even ``n``)."""
        return self.c1 if n % 2 == 1 else self.c2

    def weight(self, n: int) -> float:
        """Off-diagonal entry ``w_n = c_n * n``; ``w_0 = 0`` by convention."""
        if n <= 0:
            return 0.0
        return self.coefficient(n) * n


@dataclass(frozen=True)
class MatrixEntry:
    n: int
    q: float
    w: float


@dataclass(frozen=True)
class BandStructure:
    """Edges of the two bands of the period-2 comparison operator.

    The absolutely continuous spectrum of the comparison operator is
    ``[lo_minus, lo_plus] U [hi_minus, hi_plus]``.
    """

    lo_minus: float
    lo_plus: float
    hi_minus: float
    hi_plus: float

    @property
    def intervals(self) -> Tuple[Interval, Interval]:
        return (self.lo_minus, self.lo_plus), (self.hi_minus, self.hi_plus)

    def contains(self, lam: float) -> bool:
        return (self.lo_minus <= lam <= self.lo_plus) or (self.hi_minus <= lam <= self.hi_plus)

    def edge_distance(self, lam: float) -> float:
        return min(abs(lam - e) for e in (self.lo_minus, self.lo_plus, self.hi_minus, self.hi_plus))


class Region(enum.Enum):
    PURE_AC = "pure-ac"
    CRITICAL_B = "critical-b"
    CRITICAL_C = "critical-c"
    DISCRETE = "discrete"
    DEGENERATE = "degenerate"

    @property
    def code(self) -> str:
        """Single-letter label used in phase diagrams (``x`` = degenerate)."""
        return _REGION_CODES[self]


_REGION_CODES = {
    Region.PURE_AC: "a",
    Region.CRITICAL_B: "b",
    Region.CRITICAL_C: "c",
    Region.DISCRETE: "d",
    Region.DEGENERATE: "x",
}

_INF = math.inf


@dataclass(frozen=True)
class SpectralRegion:
    """Classification of a parameter pair with the predicted spectral intervals.

    Intervals are open; ``None`` means no spectrum of that type is predicted.
    """

    tag: Region
    ac_interval: Optional[Interval] = None
    pp_interval: Optional[Interval] = None

    def spectral_type(self, lam: float) -> str:
        """Return ``"ac"``, ``"pp"`` or ``"unclassified"`` for a point of the real line."""
        for name, iv in (("ac", self.ac_interval), ("pp", self.pp_interval)):
            if iv is not None and iv[0] < lam < iv[1]:
                return name
        return "unclassified"


def entries(params: ModulationParams, n: int) -> MatrixEntry:
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    return MatrixEntry(n=n, q=float(n), w=params.weight(n))


def _require_nondegenerate(params: ModulationParams) -> None:
    if params.degenerate():
        raise DegenerateParams(f"c1*c2 = 0 for {params}")


def discriminant(params: ModulationParams, lam: float) -> float:
    """Trace of the period-2 transfer matrix of the comparison operator."""
    _require_nondegenerate(params)
    c1, c2 = params.c1, params.c2
    return ((lam - 1.0) ** 2 - c1 * c1 - c2 * c2) / (c1 * c2)


def bands(params: ModulationParams) -> BandStructure:
    s = abs(params.c1) + abs(params.c2)
    d = abs(abs(params.c1) - abs(params.c2))
    return BandStructure(1.0 - s, 1.0 - d, 1.0 + d, 1.0 + s)


def in_ac_band(params: ModulationParams, lam: float) -> bool:
    return abs(discriminant(params, lam)) <= 2.0


def classify(params: ModulationParams, tol: float = DEFAULT_TOL) -> SpectralRegion:
    """Place ``params`` in one of the regions of the parameter plane.

    Degeneracy is tested exactly; the two critical lines
    ``||c1| - |c2|| = 1`` and ``|c1| + |c2| = 1`` use an absolute tolerance.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if params.degenerate():
        return SpectralRegion(Region.DEGENERATE, None, (-_INF, _INF))
    x, y = abs(params.c1), abs(params.c2)
    on_b = abs(abs(x - y) - 1.0) <= tol
    on_c = abs(x + y - 1.0) <= tol
    if on_b and on_c:
        raise AmbiguousClassification(f"{params} lies on both critical lines at tol={tol}")
    if on_b:
        return SpectralRegion(Region.CRITICAL_B, (-_INF, 0.5), (0.5, _INF))
    if on_c:
        return SpectralRegion(Region.CRITICAL_C, (0.5, _INF), (-_INF, 0.5))
    if abs(discriminant(params, 0.0)) < 2.0:
        return SpectralRegion(Region.PURE_AC, (-_INF, _INF), None)
    return SpectralRegion(Region.DISCRETE, None, (-_INF, _INF))
