"""Exception types shared across the package."""


class BohrLabError(Exception):
    """Base class for all bohrlab errors."""


class ParameterError(BohrLabError, ValueError):
    """A parameter is outside its admissible range."""


class CapacityError(BohrLabError):
    """An enumeration would exceed the configured index cap."""


class TailDivergenceError(BohrLabError):
    """An analytic tail does not converge at the requested exponent/radius."""


class NotCertifiedError(BohrLabError):
    """The family does not carry the sup-norm certificate the check requires."""


class ConvergenceError(BohrLabError):
    """The ball maximizer failed to converge; carries the best value found."""

    def __init__(self, message, best_value=None, best_point=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_point = best_point


class SweepError(BohrLabError):
    """A sweep generator failed part-way; carries the partial records."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
