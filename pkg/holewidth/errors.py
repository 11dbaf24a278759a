"""Exception hierarchy shared by every holewidth module."""

from typing import Any, Optional, Sequence, Tuple


class HolewidthError(Exception):
    """Base class for all errors raised by the package."""


class InvalidVertexError(HolewidthError):
    def __init__(self, message: str, vertices: Sequence[int] = ()):
        super().__init__(message)
        self.vertices = tuple(vertices)


class NotAHoleError(HolewidthError):
    def __init__(self, vertices: Sequence[int], reason: str):
        super().__init__(f"{list(vertices)} is not an induced cycle: {reason}")
        self.vertices = tuple(vertices)
        self.reason = reason


class NotInClassError(HolewidthError):
    """Raised when an operation needs a class member and a forbidden pattern exists."""

    def __init__(self, occurrence: Any):
        super().__init__(f"graph contains a forbidden {occurrence.pattern.name} on {list(occurrence.vertices)}")
        self.occurrence = occurrence


class UnclassifiableVertexError(HolewidthError):
    def __init__(self, vertex: int, trace: Tuple[int, ...], witness: Optional[Any] = None):
        detail = f"; witness {witness.pattern.name} on {list(witness.vertices)}" if witness else ""
        super().__init__(f"vertex {vertex} has hole trace {list(trace)} matching no template{detail}")
        self.vertex = vertex
        self.trace = tuple(trace)
        self.witness = witness


class PreconditionError(HolewidthError):
    """A labelling builder was called on sets that break its preconditions."""

    def __init__(self, builder: str, message: str, witness: Sequence[int] = ()):
        super().__init__(f"{builder}: {message} (witness {list(witness)})")
        self.builder = builder
        self.witness = tuple(witness)


class ExpressionError(HolewidthError):
    pass


class ExpressionParseError(ExpressionError):
    def __init__(self, message: str, position: int, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.position = position
        self.line = line
        self.column = column


class CaseNotCoveredError(HolewidthError):
    def __init__(self, sets: Sequence[str], failures: Sequence[str] = ()):
        super().__init__(f"no case covers non-empty sets {list(sets)}; failing properties {list(failures)}")
        self.sets = tuple(sets)
        self.failures = tuple(failures)


class InfeasibleSpecError(HolewidthError):
    def __init__(self, spec: Any, attempts: int, last_reason: str = ""):
        super().__init__(f"could not plant a class member after {attempts} attempts: {last_reason}")
        self.spec = spec
        self.attempts = attempts
        self.last_reason = last_reason


class GraphFormatError(HolewidthError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class ConfigError(HolewidthError):
    pass


class BoundExceededError(HolewidthError):
    """A synthesized expression uses more labels than its declared bound."""

    def __init__(self, builder: str, achieved: int, declared: int, trace: Sequence[Any] = ()):
        super().__init__(f"{builder}: width {achieved} exceeds declared bound {declared}")
        self.builder = builder
        self.achieved = achieved
        self.declared = declared
        self.trace = tuple(trace)


class DichotomyError(HolewidthError):
    """A graph certified perfect was coloured with more colours than its clique number."""

    def __init__(self, chi: int, omega: int):
        super().__init__(f"perfect branch gave chromatic number {chi} but clique number {omega}")
        self.chi = chi
        self.omega = omega
