class FinitudeError(Exception):
    """Base class for all errors raised by finitude."""


class InputError(FinitudeError, ValueError):
    """Input data violates a precondition (CLI exit code 2)."""


class SizeError(InputError):
    """A configured size gate was exceeded."""


class NotRegularError(InputError):
    pass


class NotInverseError(InputError):
    pass


class NotInvariantError(InputError):
    pass


class VerificationError(FinitudeError, AssertionError):
    """An identity that must hold by construction failed (CLI exit code 1)."""
