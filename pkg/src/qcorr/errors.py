"""Exception types shared across the package."""


class QcorrError(Exception):
    """Base class for all qcorr domain errors."""


class NotHermitian(QcorrError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotUnitTrace(QcorrError):
    """Trace differs from 1 beyond tolerance."""


class NotPositive(QcorrError):
    """Matrix has an eigenvalue below the positivity tolerance."""

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NoConvergence(QcorrError):
    """Eigen/SVD solver failed to converge."""


class UnknownName(QcorrError):
    """Unrecognized named state or channel."""


class EmptyChannel(QcorrError):
    """Kraus channel with no operators."""


class ParamOutOfRange(QcorrError):
    """Numeric parameter outside its documented domain."""


class Annihilated(QcorrError):
    """A (filtering) map sent the state to zero trace."""


class OptimizerBudgetExceeded(QcorrError):
    """Measurement optimizer ended before its convergence check was met."""


class NumericsError(QcorrError):
    """Internal consistency violation (e.g. discord below -1e-9)."""


class ParseError(QcorrError):
    """Malformed state or channel document."""
