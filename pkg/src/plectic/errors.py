"""Exception hierarchy.

Verification failures are normally reported as values; the exceptions below
are raised when a precondition of an operation is violated.
"""

from __future__ import annotations


class PlecticError(Exception):
    """Base class for all library errors."""


class SizeMismatch(PlecticError, ValueError):
    pass


class ChartMismatch(PlecticError, ValueError):
    pass


class DegreeError(PlecticError, ValueError):
    pass


class NotACocycle(PlecticError):
    pass


class NotClosed(PlecticError):
    pass


class NotInvariant(PlecticError):
    pass


class NotPerfect(PlecticError):
    pass


class MorphismCheckFailed(PlecticError):
    pass


class CoboundaryMismatch(PlecticError):
    pass


class PropertyPViolated(PlecticError):
    pass


class NoHamiltonianWitness(PlecticError):
    pass


class NoPrimitive(PlecticError):
    pass


class UnsupportedN(PlecticError, ValueError):
    pass


class InternalInconsistency(PlecticError):
    """Two independent code paths disagreed; always a bug."""


class Obstructed(PlecticError):
    """The obstruction class is nontrivial; carries the class."""

    def __init__(self, obstruction):
        self.obstruction = obstruction
        super().__init__(f"obstruction class is nontrivial: {obstruction.cocycle}")


class ParseError(PlecticError, ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownCoordinate(ParseError):
    pass
