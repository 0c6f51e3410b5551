"""Exception types shared across the package."""
from __future__ import annotations


class CycleCertError(Exception):
    """Base class for all package-specific errors."""


class ParseError(CycleCertError):
    """Malformed graph text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TooSmall(CycleCertError):
    """Input graph below the minimum order for the requested operation."""


class TooLarge(CycleCertError):
    """Input graph above the exhaustive-search bound for the operation."""


class InvalidAssembly(CycleCertError):
    """Segment list does not describe a valid cycle of the host graph.

    Raised by assemble_cycle. Reaching this from a merge rule means the
    rule proposed a construction whose premises it did not fully check;
    rules treat it as "this candidate instantiation is unusable" and move
    to the next one.
    """


class InvalidRotation(CycleCertError):
    """Pivot vertex unusable for a path rotation."""


class NotCycleEdge(CycleCertError):
    """Vertex pair is not an edge of the given oriented cycle."""


class SingleCycle(CycleCertError):
    """Operation needs a 2-factor with at least two cycles."""


class DegreeTooSmall(CycleCertError):
    """A vertex of degree < 2 cannot appear in any 2-factor."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has degree < 2")


class ConstructionUnavailable(CycleCertError):
    """A merge rule found its trigger but no transcribed construction fits.

    This is evidence that the current cycle state lacks a property the
    guaranteeing argument derives from global consistency. It is never
    swallowed: the solver escalates it into an anomaly certificate.
    """

    def __init__(self, rule: str, detail: dict):
        self.rule = rule
        self.detail = detail
        super().__init__(f"{rule}: no construction applicable ({detail})")


class InducedTwoK2Found(CycleCertError):
    """A merge rule stumbled over a concrete induced 2K2 in the input."""

    def __init__(self, first: tuple[int, int], second: tuple[int, int]):
        self.witness = (tuple(first), tuple(second))
        super().__init__(f"induced 2K2 on edges {first} and {second}")


class Not2K2Free(CycleCertError):
    """Solver input fails the 2K2-freeness precondition."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"input contains induced 2K2: {witness}")


class GenerationFailed(CycleCertError):
    """Rejection sampling exhausted its attempt budget."""
