"""Exception hierarchy shared by every module in the package."""


class ZetaBoundError(Exception):
    """Base class for all package errors."""


class DomainError(ZetaBoundError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(ZetaBoundError):
    """A numerical procedure stopped before meeting its tolerance.

    ``partial`` holds the best value available when the procedure gave up.
    """

    def __init__(self, message, partial=None, error_estimate=None):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class QuadratureError(ConvergenceError):
    pass


class PrecisionError(ZetaBoundError):
    """The requested accuracy is below what the implemented method delivers."""

    def __init__(self, message, achievable):
        super().__init__(message)
        self.achievable = achievable


class ZeroFileError(ZetaBoundError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class CoverageError(ZetaBoundError):
    """A zero list or Mangoldt table does not reach far enough."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class TermError(ZetaBoundError):
    """A component failed while assembling a composite result; ``term`` names it."""

    def __init__(self, term, cause):
        super().__init__(f"{term}: {cause}")
        self.term = term
        self.cause = cause
