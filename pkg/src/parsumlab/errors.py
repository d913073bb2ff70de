"""Exception types raised across the package."""


class ParsumlabError(Exception):
    pass


class DomainMismatch(ParsumlabError):
    pass


class NoExtension(ParsumlabError):
    pass


class BudgetTooSmall(ParsumlabError):
    pass


class InvalidStructure(ParsumlabError):
    """A finite structure fails one of its defining axioms."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ActionsDoNotCommute(ParsumlabError):
    pass


class ObjectNotInTarget(ParsumlabError):
    pass


class InsufficientGermDomain(ParsumlabError):
    pass


class NotSupported(ParsumlabError):
    pass


class TNotStable(ParsumlabError):
    pass


class BoundsExceeded(ParsumlabError):
    pass


class WindowOverflow(ParsumlabError):
    pass


class SupportsOverlap(ParsumlabError):
    pass


class PreconditionFailed(ParsumlabError):
    pass


class UnknownSuite(ParsumlabError):
    pass


class MalformedInput(ParsumlabError):
    pass


class SchemaViolation(ParsumlabError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
