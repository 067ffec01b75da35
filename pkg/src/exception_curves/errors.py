"""Exception hierarchy.

Validation errors map to CLI exit code 2, numerical failures to exit code 3.
"""


class ValidationError(ValueError):
    """Invalid input to one of the library operations."""


class LengthMismatch(ValidationError):
    pass


class TooShort(ValidationError):
    pass


class EqualSequences(ValidationError):
    pass


class UnequalOneCounts(ValidationError):
    pass


class DegenerateCurve(ValidationError):
    pass


class LimitExceeded(ValidationError):
    pass


class OutOfDomain(ValidationError):
    pass


class InvalidSlice(ValidationError):
    pass


class PairTooLong(ValidationError):
    pass


class NotInR(ValidationError):
    pass


class NotOnCurve(ValidationError):
    pass


class NumericalFailure(RuntimeError):
    """A numerical search did not produce the object it was asked for."""


class WindowNotFound(NumericalFailure):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NoIntersectionWithR(NumericalFailure):
    pass
