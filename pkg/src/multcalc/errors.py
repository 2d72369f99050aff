"""Exception hierarchy shared by every module."""


class MultcalcError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(MultcalcError, ValueError):
    """Operands live in different matrix sizes or different groups."""


class DomainError(MultcalcError, ValueError):
    """An argument lies outside the set where an operation is defined."""


class ModeMismatch(MultcalcError, TypeError):
    """Exact and floating operands were mixed."""


class DegreeOverflow(MultcalcError, ValueError):
    """A polynomial path would exceed the degree cap."""


class SupportOverflow(DomainError):
    """A finitely supported sequence would exceed the support cap."""


class SpecError(MultcalcError, ValueError):
    """A job is malformed or names something unknown."""
