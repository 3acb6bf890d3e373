"""Exception hierarchy shared by all flatcheck modules."""


class FlatcheckError(Exception):
    """Base class for all errors raised by this package."""


class VariableClash(FlatcheckError):
    """Mismatched rings, duplicate variable names, or unmapped variables."""


class InvalidInput(FlatcheckError):
    """An argument violates an operation's precondition."""


class GuardExceeded(FlatcheckError):
    """A resource guard (degree, pair count, wall time) tripped.

    Carries the name of the guard that tripped so reports can surface it.
    """

    def __init__(self, guard: str, message: str = ""):
        self.guard = guard
        super().__init__(message or f"guard exceeded: {guard}")


class NotZeroDimensional(FlatcheckError):
    """Zero-dimensional decomposition called on a positive-dimensional ideal."""


class GenericityFailure(FlatcheckError):
    """All retries for a generic coordinate choice were exhausted."""


class HypothesisViolation(FlatcheckError):
    """A machine-checkable hypothesis of the flatness criterion failed."""

    def __init__(self, name: str, message: str = ""):
        self.hypothesis = name
        super().__init__(message or f"hypothesis violated: {name}")


class ParseError(FlatcheckError):
    """Problem-file syntax error, with source position."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += " (expected: " + ", ".join(self.expected) + ")"
        super().__init__(detail)
