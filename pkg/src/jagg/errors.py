"""Exception hierarchy shared across the package.

``JaggError`` covers everything a caller can provoke with bad input; the
CLI maps it to exit status 1. ``InternalInvariantError`` signals a broken
internal assumption (exit status 2) and is never raised for user mistakes.
"""


class JaggError(Exception):
    """Base class for all input and domain errors."""


class FormulaSyntaxError(JaggError):
    """Constraint text does not conform to the formula grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIssueError(JaggError):
    """A formula refers to a variable that is not an agenda issue."""

    def __init__(self, name: str):
        super().__init__(f"unknown issue: {name!r}")
        self.name = name


class ContradictionError(JaggError):
    """The constraint has no model; no judgment can be rational."""


class CapacityError(JaggError):
    """The agenda is too large for exhaustive enumeration."""


class AgendaMismatchError(JaggError):
    """Two values built over different agendas were combined."""


class MajorityTieError(JaggError):
    """Issue-wise majority is undefined because some issue is tied."""

    def __init__(self, issue: str):
        super().__init__(f"majority tie on issue {issue!r}")
        self.issue = issue


class NotRationalError(JaggError):
    """A judgment does not satisfy the constraint where rationality is required."""


class VertexNotInGraphError(JaggError):
    """A judgment queried against a graph is not one of its vertices."""


class FileFormatError(JaggError):
    """An input file does not match its documented format."""


class InternalInvariantError(Exception):
    """A structural invariant the implementation relies on was violated."""
