"""Exception types shared across the package."""

from __future__ import annotations


class PDMeansError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(PDMeansError, ValueError):
    """Operands have incompatible shapes or lengths."""


class DomainError(PDMeansError, ValueError):
    """A parameter lies outside the mathematical domain of the operation."""


class NotPositiveDefiniteError(PDMeansError, ValueError):
    """A matrix required to be positive definite is not."""


class NumericalFailureError(PDMeansError, RuntimeError):
    """A numerical kernel failed (eigensolver non-convergence, negative
    radicand beyond tolerance, and similar)."""

    def __init__(self, message: str, *, dim: int | None = None,
                 cond_estimate: float | None = None):
        super().__init__(message)
        self.dim = dim
        self.cond_estimate = cond_estimate


class ConvergenceError(PDMeansError, RuntimeError):
    """An operation that requires a converged solve received a solver
    report with a non-converged status."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
