"""Exception hierarchy shared across the package."""


class DSCentralityError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(DSCentralityError, ValueError):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyInputError(DSCentralityError, ValueError):
    pass


class DegenerateSpectrumError(DSCentralityError, ValueError):
    pass


class ConvergenceError(DSCentralityError, RuntimeError):
    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class RegimeError(DSCentralityError, ValueError):
    """Raised when the closed-form limit is requested outside its convergence regime."""

    def __init__(self, message: str, threshold: float | None = None):
        super().__init__(message)
        self.threshold = threshold


class SizeError(DSCentralityError, ValueError):
    pass


class DatasetUnavailableError(DSCentralityError, FileNotFoundError):
    pass
