"""
=============================================================================
Solve Reports
=============================================================================

Output bundle shared by all solver variants, plus the cooperative
deadline used for timeouts.

COUNTERS:
---------
- lifts: applications of the lifting operator
- pops: worklist extractions (sequential solver only)
- changes: lifts that raised a value
- rounds: sweeps (Sweep) or frontier rounds (Frontier); 0 for Seq

BOUNDS:
-------
Every value can rise at most M_G + 1 times (0..M_G, then TOP), so
changes <= |V|·(M_G + 1). Worklist/frontier variants only lift seeds and
vertices notified by a change, so lifts <= |V| + |E|·(M_G + 1).
=============================================================================
"""

import time
from dataclasses import dataclass, field
from enum import StrEnum

from src.arena.types import GameArena
from src.errors import SolveTimeoutError
from src.measure.progress import ProgressMeasure


class Variant(StrEnum):
    SEQ = "seq"
    SWEEP = "sweep"
    FRONTIER = "frontier"


class MappingKind(StrEnum):
    VERTEX = "vertex"
    CHUNK = "chunk"


@dataclass(frozen=True)
class AdjacencyMapping:
    """PerVertex, or Chunked(h) with h lanes cooperating on one vertex."""

    kind: MappingKind = MappingKind.VERTEX
    chunk_size: int = 1

    @property
    def label(self) -> str:
        return "vertex" if self.kind == MappingKind.VERTEX else f"chunk{self.chunk_size}"


PER_VERTEX = AdjacencyMapping()


@dataclass
class SolveReport:
    """Result of one solver run."""

    measure: ProgressMeasure
    w0: frozenset[int]
    w1: frozenset[int]
    lifts: int
    pops: int
    changes: int
    rounds: int
    wall_time: float
    variant: Variant
    mapping: AdjacencyMapping = PER_VERTEX
    workers: int = 1

    # Frontier sizes (Frontier) or changed-vertex counts (Sweep), one entry per round
    round_log: list[int] = field(default_factory=list)

    def change_bound(self, arena: GameArena) -> int:
        return arena.num_vertices * (arena.mg + 1)

    def lift_bound(self, arena: GameArena) -> int:
        """Upper bound on `lifts` for this variant."""
        if self.variant == Variant.SWEEP:
            return arena.num_vertices * sweep_cap(arena)
        return arena.num_vertices + arena.num_edges * (arena.mg + 1)

    def summary(self) -> str:
        return (
            f"variant={self.variant} mapping={self.mapping.label} workers={self.workers} "
            f"lifts={self.lifts} changes={self.changes} rounds={self.rounds} "
            f"|W0|={len(self.w0)} |W1|={len(self.w1)} time={self.wall_time:.3f}s"
        )


def sweep_cap(arena: GameArena) -> int:
    """Default sweep loop cap: every change-carrying sweep raises some value, plus one confirming sweep."""
    return arena.num_edges * (arena.mg + 1) + 1


@dataclass
class Deadline:
    """Cooperative cancellation, checked at round / sweep / batch boundaries."""

    timeout: float | None = None
    start: float = field(default_factory=time.perf_counter)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def expired(self) -> bool:
        return self.timeout is not None and self.elapsed >= self.timeout

    def check(self) -> None:
        if self.expired():
            raise SolveTimeoutError(self.elapsed)
