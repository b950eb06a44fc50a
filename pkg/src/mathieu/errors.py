"""Exception hierarchy shared by the evaluators and the CLI."""


class MathieuError(Exception):
    """Base class for every numeric failure raised by this package."""


class DomainError(MathieuError, ValueError):
    """Parameter outside the region where the quantity is defined."""


class PreconditionError(MathieuError, ValueError):
    """Caller violated a documented precondition."""


class ToleranceUnreachable(MathieuError):
    """The requested tolerance cannot be certified in double precision."""


class NonConvergence(MathieuError):
    """Successive quadrature refinements disagree beyond the allowed margin."""
