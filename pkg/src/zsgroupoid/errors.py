"""Exception hierarchy shared by every module."""


class GroupoidError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(GroupoidError):
    """A composition/inversion table references unknown elements or is incomplete."""


class PreconditionError(GroupoidError, ValueError):
    """An operation was called on inputs that do not satisfy its precondition."""


class SearchTooLarge(GroupoidError):
    """An exhaustive search was refused because the input exceeds the size guard."""


class DomainError(GroupoidError):
    """Action/restriction tables are not defined on exactly the fibre product."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class VerificationFailed(GroupoidError):
    """Raised when a construction needs a verified input and verification failed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidConstruction(PreconditionError):
    """Construction input (action, cocycle, endomorphism pair) violates its invariants."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)
