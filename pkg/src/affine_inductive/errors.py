"""Exception types raised across the package."""


class NonPrime(ValueError):
    """The requested characteristic is not a prime."""


class UnsupportedSize(ValueError):
    """The requested field order exceeds the configured bound."""


class ContextMismatch(ValueError):
    """Operands belong to different field realizations."""


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroScale(ValueError):
    """A dilation was requested with scale factor zero."""


class LengthMismatch(ValueError):
    pass


class NotAbelian(ValueError):
    """An algebra handed to a check that requires commutativity is not commutative.

    This signals a harness bug rather than a failure of the statement being checked.
    """


class CounterexampleFound(RuntimeError):
    """A normalized closure that is abelian yet escapes the multiplication algebra."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
