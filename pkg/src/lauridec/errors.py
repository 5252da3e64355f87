"""Exception hierarchy shared by all modules."""


class LauridecError(Exception):
    """Base class for all library errors."""


class DomainError(LauridecError):
    """Argument outside the region where the requested quantity is defined."""


class ParameterError(LauridecError):
    """Invalid parameter bundle (e.g. a Pochhammer denominator that vanishes)."""


class SingularityError(LauridecError):
    """Evaluation requested exactly at a pole of a kernel."""


class QuadratureError(LauridecError):
    """A quadrature node coincides with a singular point of the integrand."""


class UsageError(LauridecError):
    """Malformed CLI invocation."""
