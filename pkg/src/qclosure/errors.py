"""Exception types shared across the library."""


class QClosureError(Exception):
    """Base class for all library errors."""


class DomainError(QClosureError):
    """An argument is outside the domain an operation is defined on."""


class PreconditionError(QClosureError):
    """A structural precondition of an operation does not hold."""


class InvalidWordError(QClosureError):
    """A chi-word cannot describe the orbital ordering of any automorphism."""


class NotInClassError(PreconditionError):
    """A partial map does not extend into the closure it was tested against."""


class NotRichError(PreconditionError):
    """A partial map does not realize the per-letter quotas of its word."""


class AmalgamationError(QClosureError):
    """No amalgam exists for the given triple (base not sufficiently extended)."""


class ParseError(QClosureError):
    """Malformed textual input."""
