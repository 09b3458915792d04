"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data (bad dimensions, non-stochastic rows, ...)."""

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation was called on arguments that violate its documented precondition."""


class GuaranteeViolation(AssertionError):
    """A check that cannot fail under a correct implementation did fail.

    Carries the offending instance so it can be replayed.
    """

    def __init__(self, message, dump=None):
        self.dump = dump or {}
        super().__init__(message)
