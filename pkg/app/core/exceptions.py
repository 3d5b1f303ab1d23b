from typing import Optional


class TunnelInvariantsException(Exception):
    """Base exception class for every violated precondition in the library."""

    default_detail = "Invalid input"
    status_code = 422
    exit_code = 2

    def __init__(self, detail: Optional[str] = None, status_code: Optional[int] = None):
        self.detail = detail or self.default_detail
        if status_code is not None:
            self.status_code = status_code
        super().__init__(self.detail)


class ValidationException(TunnelInvariantsException):
    """Exception raised when an argument violates an operation's precondition."""

    default_detail = "Validation error"


class InvalidSStringError(ValidationException):
    """Exception raised for parameter strings with characters outside {0,1}."""

    default_detail = "Parameter string may only contain the characters 0 and 1"


class NotRegularError(ValidationException):
    """Exception raised when an operation needs a regular tunnel but gets a depth one tunnel."""

    default_detail = "Parameter string has no 1, so the tunnel is simple or semisimple (depth 1)"


class TorusLinkError(ValidationException):
    """Exception raised for (p,q) pairs that do not describe a torus knot."""

    default_detail = "p and q must be nonzero and coprime; a common factor describes a torus link"


class TrivialKnotError(ValidationException):
    """Exception raised when a cabling sequence is requested for the trivial knot."""

    default_detail = "The trivial knot has no nontrivial cabling constructions"
