"""
=============================================================================
Error Hierarchy
=============================================================================

Every recoverable failure raised by the solver library derives from
EnergyGameError, so the CLI can map a whole family to one exit code.

Contract violations (out-of-range vertex ids passed to adjacency readers)
raise IndexError and are deliberately NOT part of this hierarchy.
=============================================================================
"""


class EnergyGameError(Exception):
    """Base class for all solver library errors."""


# =============================================================================
# Arena construction
# =============================================================================


class ArenaError(EnergyGameError):
    """Base class for arena validation failures."""


class NonTotalArenaError(ArenaError):
    """A vertex has no outgoing edge."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no outgoing edge (arena is not total)")


class DanglingVertexError(ArenaError):
    """An edge references a vertex id outside [0, num_vertices)."""

    def __init__(self, vertex: int, num_vertices: int):
        self.vertex = vertex
        self.num_vertices = num_vertices
        super().__init__(f"vertex id {vertex} is outside [0, {num_vertices})")


class ArithmeticOverflowError(EnergyGameError):
    """A value is not representable as a signed 64-bit integer."""


class WeightBoundError(ArithmeticOverflowError):
    """An edge weight exceeds the declared |W_max| bound."""

    def __init__(self, weight: int, bound: int):
        self.weight = weight
        self.bound = bound
        super().__init__(f"weight {weight} exceeds declared bound |w| <= {bound}")


# =============================================================================
# Text formats
# =============================================================================


class ArenaSyntaxError(EnergyGameError):
    """Malformed line in an arena or solution document."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class CountMismatchError(EnergyGameError):
    """Header counts disagree with the number of records."""


# =============================================================================
# Solving
# =============================================================================


class NoWitnessError(EnergyGameError):
    """A finite player-0 vertex has no successor satisfying its EPM condition."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"no witnessing successor for vertex {vertex}; measure is not a valid EPM")


class BoundExhaustedError(EnergyGameError):
    """The sweep solver hit its loop cap before reaching a fixpoint."""

    def __init__(self, sweeps: int):
        self.sweeps = sweeps
        super().__init__(f"sweep bound exhausted after {sweeps} sweeps without fixpoint")


class SolveTimeoutError(EnergyGameError):
    """Cooperative cancellation: the solve deadline passed."""

    def __init__(self, elapsed: float):
        self.elapsed = elapsed
        super().__init__(f"solve timed out after {elapsed:.3f}s")


class InvariantViolationError(EnergyGameError):
    """A debug-mode invariant scan failed (implementation bug)."""

    def __init__(self, what: str, vertex: int | None = None):
        self.what = what
        self.vertex = vertex
        where = f" at vertex {vertex}" if vertex is not None else ""
        super().__init__(f"invariant violated: {what}{where}")


# =============================================================================
# Oracle
# =============================================================================


class OracleTooLargeError(EnergyGameError):
    """The instance exceeds a hard oracle guard."""

    def __init__(self, size: int, limit: int, what: str = "product states"):
        self.size = size
        self.limit = limit
        super().__init__(f"oracle guard exceeded: {size} {what} > {limit}")


class MalformedStrategyError(EnergyGameError):
    """A strategy choice is not a successor of its vertex, or is missing."""

    def __init__(self, vertex: int, reason: str = "choice is not a successor"):
        self.vertex = vertex
        super().__init__(f"malformed strategy at vertex {vertex}: {reason}")


class InvalidSpecError(EnergyGameError, ValueError):
    """A generator or solver configuration is invalid."""


class InputFileError(EnergyGameError):
    """An input document could not be read."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"cannot read {path}: {reason}")
