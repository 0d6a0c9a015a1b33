"""Exception types raised across the package."""


class HardyApproxError(Exception):
    """Base class for all errors raised by :mod:`hardyapprox`."""


class DomainError(HardyApproxError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class DegenerateSequenceError(HardyApproxError, ValueError):
    """Two points of a finite sequence coincide (numerically)."""


class ConstructionError(HardyApproxError, ValueError):
    """A symbol could not be built with the requested parameters."""


class AccuracyError(HardyApproxError, RuntimeError):
    """A numerical self-check failed its tolerance."""


class RangeError(HardyApproxError, ValueError):
    """An asymptotic formula was requested outside its range of validity."""
