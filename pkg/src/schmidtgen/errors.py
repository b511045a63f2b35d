"""Exception hierarchy.

``ValidationError`` covers bad inputs (CLI exit code 1), ``NumericalError``
covers algorithmic failures on valid inputs (CLI exit code 2).
"""


class SchmidtGenError(Exception):
    pass


class ValidationError(SchmidtGenError, ValueError):
    pass


class DimensionError(ValidationError):
    pass


class TooLargeError(ValidationError):
    """Requested dense object exceeds the configured size guard."""


class GraphError(ValidationError):
    """Malformed, cyclic or out-of-range graph input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NumericalError(SchmidtGenError, ArithmeticError):
    pass


class RankDeficientError(NumericalError):
    """Input matrix is numerically singular; resample upstream."""
