class ConfigurationError(ValueError):
    """Invalid parameters or configuration; ``field`` names the offending entry."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class PrecisionError(ArithmeticError):
    """The requested resolution exceeds what the working precision can certify."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""
