"""Exception and warning types raised across the package."""


class SpectralPhaseError(Exception):
    """Base class for all package errors."""


class DegenerateParams(SpectralPhaseError, ValueError):
    """Operation requires c1*c2 != 0."""


class DegenerateWeight(SpectralPhaseError, ValueError):
    """A weight lambda_n vanishes where a division by it is needed."""


class AmbiguousClassification(SpectralPhaseError, ValueError):
    """Both critical-line tests passed at the requested tolerance."""


class PoleAtDiagonal(SpectralPhaseError, ZeroDivisionError):
    """Spectral parameter coincides with a diagonal entry used as a divisor."""


class NoConvergence(SpectralPhaseError, ArithmeticError):
    """Backward recursion did not stabilise; no minimal solution detected."""


class HalfLineResonance(SpectralPhaseError, ValueError):
    """The point lambda = 1/2 on a critical line, where the double-root asymptotics break down."""


class InsufficientData(SpectralPhaseError, ValueError):
    """Trace too short or too degenerate for a fit."""


class IndexOutOfRange(SpectralPhaseError, IndexError):
    pass


class WrongRegion(SpectralPhaseError, ValueError):
    """Parameters outside the region an operation is defined for."""


class UnstableCount(SpectralPhaseError, ArithmeticError):
    """Truncation eigenvalue count changed under size doubling."""


class CertificateMismatch(SpectralPhaseError, AssertionError):
    """A witness vector and the truncation eigenvalue count disagree."""


class NearDegenerateRoots(UserWarning):
    """Characteristic roots nearly coincide; power-law exponents are ill-conditioned."""
