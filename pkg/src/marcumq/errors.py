"""Exception hierarchy shared by every evaluator."""


class MarcumError(Exception):
    """Base class for all errors raised by :mod:`marcumq`."""


class MarcumDomainError(MarcumError, ValueError):
    """An argument lies outside the domain of the requested function."""


class NonConvergenceError(MarcumError, ArithmeticError):
    """A series or iteration exhausted its budget before meeting its target."""

    def __init__(self, message, terms_used=None, error_bound=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.error_bound = error_bound


class InfeasibleError(NonConvergenceError):
    """The a-priori term count needed for a target exceeds the allowed cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class IllConditionedError(MarcumError, ArithmeticError):
    """Cancellation in the requested series would swamp double precision.

    Raised instead of returning a number that cannot be trusted; pass
    ``force=True`` to evaluate anyway, or fall back to quadrature.
    """


class ToleranceNotMetError(NonConvergenceError):
    """The adaptive quadrature hit its interval limit above tolerance."""


class InternalConsistencyError(MarcumError, ArithmeticError):
    """A computed probability left [0, 1] by more than its error bound."""
