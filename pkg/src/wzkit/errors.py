"""Exception hierarchy shared by every wzkit module."""


class WZError(Exception):
    """Base class for all engine errors."""


class DivisionByZeroError(WZError, ZeroDivisionError):
    pass


class NotDivisibleError(WZError):
    """Raised by exact polynomial division when a remainder is left."""


class PoleError(WZError):
    """Evaluation hit a genuine pole.  ``point`` holds the failing assignment."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = dict(point) if point is not None else None


class NotHypergeometricError(WZError):
    pass


class SupportError(WZError):
    """A summation range could not be resolved to finite bounds."""


class NoWZPairError(WZError):
    pass


class RecurrenceNotFoundError(WZError):
    def __init__(self, message, order):
        super().__init__(message)
        self.order = order


class BudgetExceededError(WZError):
    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class TruncationError(WZError):
    pass


class CertificateFormatError(WZError):
    pass


class DslError(WZError):
    """Rejection of identity-language input; always carries a position."""

    kind = "error"

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{self.kind} at line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class DslSyntaxError(DslError):
    kind = "syntax error"


class DslSemanticError(DslError):
    kind = "semantic error"
