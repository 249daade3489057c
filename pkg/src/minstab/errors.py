"""Exception hierarchy shared by every module."""


class MinstabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MinstabError, ValueError):
    """A point or level lies outside (or too close to the edge of) a chart."""


class DegenerateMetricError(MinstabError, ArithmeticError):
    """The metric matrix is singular or too badly conditioned to invert."""


class ParameterError(MinstabError, ValueError):
    """Invalid model parameters, e.g. non-coprime (p, q)."""


class ConsistencyError(MinstabError, RuntimeError):
    """An internal certificate failed (root count, monotonicity, exclusion bound).

    Raising this means the numbers disagree with the analytic argument they
    are supposed to certify, so it should never be caught and ignored.
    """


class OracleFailure(MinstabError, RuntimeError):
    """A discretized eigenvalue did not converge under grid refinement."""
