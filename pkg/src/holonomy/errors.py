"""Exception hierarchy.

Validation problems (bad shapes, out-of-domain parameters) derive from
:class:`ValidationError`; failures that only show up during a computation
(a loop that does not close, a grid that is too coarse) derive from
:class:`NumericalError`. The CLI maps the two families to exit codes 2 and 3.
"""


class HolonomyError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HolonomyError, ValueError):
    """An input violates a documented invariant."""


class DimensionError(ValidationError):
    """Array shapes are inconsistent."""


class DomainError(ValidationError):
    """A scalar parameter lies outside its admissible range."""


class PreconditionError(ValidationError):
    """Inputs are individually valid but do not fit together."""


class DimensionConditionError(ValidationError):
    """The ambient space is too small for the requested construction (d < 2n - k)."""


class NumericalError(HolonomyError, ArithmeticError):
    """A computation could not be completed to the required accuracy."""


class ClosureError(NumericalError):
    """A curve that should be a loop does not return to its starting point."""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"curve is not closed: residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
        )


class ResolutionError(NumericalError):
    """The sample grid is too coarse for the requested operation."""


class ConvergenceError(NumericalError):
    """A self-check comparing a result with its target failed."""
