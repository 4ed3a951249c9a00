"""Exception hierarchy shared by all starhull modules."""


class StarHullError(Exception):
    """Base class for all starhull errors."""


class DomainError(StarHullError, ValueError):
    """An argument violates a documented precondition."""


class NumericError(StarHullError, ArithmeticError):
    """A numerical routine failed to converge.

    Carries the last residual estimate in ``residual`` when available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ResourceError(StarHullError):
    """A computation would exceed a configured resource cap."""


class StatisticsError(StarHullError):
    """Not enough data to compute the requested statistic."""
