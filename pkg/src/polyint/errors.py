"""Exception types shared across the package."""


class PolyintError(Exception):
    """Base class for every error raised by polyint."""


class DomainError(PolyintError, ValueError):
    """Input is outside the domain of an operation (log(0), h = 1, ...)."""


class DependentGenerator(DomainError):
    """A proposed tower generator is algebraically dependent on earlier ones."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class PreconditionError(PolyintError, ValueError):
    """A documented precondition of an operation does not hold."""


class ParseError(PolyintError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message
