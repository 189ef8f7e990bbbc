"""Exception taxonomy shared by every fracml module.

The classes mirror the failure modes of the numerics: poles and range
overflow in scalar functions, series that refuse to converge or cancel
catastrophically, quadrature that runs out of subdivisions or meets a
divergent integrand, and solver calls outside a kernel's validity window.
"""


class FracmlError(Exception):
    """Base class for all library errors."""


class DomainError(FracmlError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. gamma at a non-positive integer)."""


class RangeOverflowError(FracmlError, OverflowError):
    """Result magnitude beyond the representable floating-point range."""


class ConvergenceError(FracmlError):
    """A series or iteration failed to converge within its term budget.

    ``best`` carries the last partial result when one exists.
    """

    def __init__(self, message, best=None, terms=None):
        super().__init__(message)
        self.best = best
        self.terms = terms


class CancellationError(FracmlError):
    """Catastrophic cancellation detected (severity above the guard)."""

    def __init__(self, message, severity=None, best=None):
        super().__init__(message)
        self.severity = severity
        self.best = best


class QuadratureError(FracmlError):
    """Quadrature failure; ``best`` and ``err_est`` hold the last estimate."""

    def __init__(self, message, best=None, err_est=None):
        super().__init__(message)
        self.best = best
        self.err_est = err_est


class SubdivisionLimitError(QuadratureError):
    """Adaptive quadrature hit its subdivision budget."""


class IntegrandError(QuadratureError):
    """The integrand returned NaN (or raised) at some evaluation point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class TailError(QuadratureError):
    """Tail panels of a semi-infinite integral failed the tolerance."""


class DivergenceError(QuadratureError):
    """Successive tail-cutoff doublings keep changing the value: the
    integral is treated as divergent (an infinite moment, not a bug)."""


class RegimeError(FracmlError):
    """Operation requested outside its declared validity window."""


class MissingMomentError(FracmlError):
    """An initial-condition moment is needed but not finite/available."""


class BlowUpError(FracmlError):
    """Characteristic-flow integration left the representable range."""
