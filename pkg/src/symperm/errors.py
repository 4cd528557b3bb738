"""Exception hierarchy shared by every module of the package."""


class SympermError(Exception):
    """Base class for all errors raised by symperm."""


class ParameterError(SympermError, ValueError):
    """Invalid or inconsistent parameters (sizes, symmetry/parameter mismatch)."""


class DomainError(SympermError, ValueError):
    """Argument outside the supported numerical domain."""


class SizeError(SympermError, ValueError):
    """Problem size exceeds a configured enumeration bound."""


class UnsupportedError(SympermError, NotImplementedError):
    """Operation is not available for the requested case."""


class InvariantError(SympermError, ValueError):
    """An input object violates a structural invariant."""


class NumericsError(SympermError, ArithmeticError):
    """A numerical procedure could not deliver a trustworthy result."""


class InstabilityError(NumericsError):
    """ODE integration left its expected envelope."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} (at x={x:.6g})")
        self.x = x
