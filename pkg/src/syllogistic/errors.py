"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class SyllogisticError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SyllogisticError):
    """Raised on malformed textual input; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class CompositionError(SyllogisticError):
    """Two adjacent atoms do not share their junction term-variable.

    ``junction`` counts from 1 in printed order: junction 1 sits between the
    first and the second printed atom.
    """

    def __init__(self, junction: int, left, right):
        self.junction = junction
        self.left = left
        self.right = right
        super().__init__(
            f"atoms do not compose at junction {junction}: "
            f"{left} does not meet {right}"
        )


class ChainError(SyllogisticError):
    """A chain diagram violates its structural invariants."""


class WellFormednessError(SyllogisticError):
    pass


class InapplicableError(SyllogisticError):
    """A rewrite rule was applied where its left-hand side does not match."""


class ResourceError(SyllogisticError):
    """A search space exceeds a configured cap; ``cap`` names the limit."""

    def __init__(self, message: str, cap: str):
        self.cap = cap
        super().__init__(message)


class UnassignedVariableError(SyllogisticError):
    pass
