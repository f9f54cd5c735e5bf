"""Exception types shared across the package."""


class MwcsError(Exception):
    """Base class for all package-specific errors."""


class ParseError(MwcsError):
    """Malformed instance input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InfeasibleError(MwcsError):
    """No solution can satisfy the root requirements."""


class SizeLimitError(MwcsError):
    """Instance exceeds a hard size limit."""


class BudgetExhaustedError(MwcsError):
    """An exact sub-solve ran out of its search budget."""
