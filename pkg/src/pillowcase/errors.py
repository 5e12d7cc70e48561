"""Exception hierarchy shared by every module."""


class PillowcaseError(Exception):
    """Base class for errors raised by this package."""


class InvalidInput(PillowcaseError, ValueError):
    """Input data violates a documented precondition."""


class CapabilityError(PillowcaseError):
    """A configured size bound was exceeded; the computation was refused."""


class DomainError(PillowcaseError, ValueError):
    """The operation is not defined for this kind of input."""


class ConsistencyError(PillowcaseError):
    """Two independent computations that must agree did not.

    This signals a bug (or a convention error), never bad user input.
    """
