"""Exception types raised across the package."""


class OhmicProbeError(Exception):
    """Base class for all package errors."""


class DomainError(OhmicProbeError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma function evaluated at (or too close to) a non-positive integer."""


class DimensionMismatch(OhmicProbeError, ValueError):
    pass


class ConvergenceError(OhmicProbeError, RuntimeError):
    """Adaptive quadrature did not reach its tolerance within the panel budget."""


class NumericalError(OhmicProbeError, RuntimeError):
    pass


class BracketError(OhmicProbeError, RuntimeError):
    """No interior maximum could be bracketed by the time scan."""


class NoCrossoverError(OhmicProbeError, RuntimeError):
    pass


class InsufficientData(OhmicProbeError, RuntimeError):
    """Too few non-degenerate Monte Carlo trials to estimate a variance."""
