"""Exception types shared across the package."""


class CapMismatch(ValueError):
    """Two elements with different degree caps were combined."""


class NotPrimitive(ValueError):
    """An associative element is not the expansion of any Lie element.

    Carries the nonzero residual left after triangular elimination.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class PreconditionFailed(ValueError):
    """An operation was called on input that fails its stated precondition."""


class InconsistentSystem(RuntimeError):
    """A linear system that is guaranteed solvable turned out inconsistent.

    Raising this signals an internal bug, not a user error.
    """


class DocumentError(ValueError):
    """A solution document failed validation; ``field`` names the offender."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
