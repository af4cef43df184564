"""Exceptions shared across the package."""


class ResourceLimitError(RuntimeError):
    """An orbit or series computation exceeded a configured guard.

    Carries enough context to report which limit tripped and where.
    """

    def __init__(self, message, *, step=None, value=None):
        super().__init__(message)
        self.step = step
        self.value = value


class ContractionError(ValueError):
    """Weights violate the contraction condition |w_b| + |w_f| < 1."""


class EvaluationOverflowError(ArithmeticError):
    """A numeric series evaluation produced a non-finite value."""

    def __init__(self, message, *, x=None, index=None):
        super().__init__(message)
        self.x = x
        self.index = index
