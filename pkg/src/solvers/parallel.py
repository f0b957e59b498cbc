"""
=============================================================================
Parallel Solvers
=============================================================================

Two data-parallel ways to reach the least energy progress measure:

- solve_sweep: lift every vertex, every sweep, until a sweep changes
  nothing (or the sweep cap is hit).
- solve_frontier: lift only the vertices in the current frontier; every
  vertex whose value changed sends its predecessors to the next frontier.

EXECUTION MODEL:
----------------
The vertex set of a sweep/round is cut into contiguous blocks (vertex-
balanced for PerVertex, edge-balanced for Chunked). A ThreadPoolExecutor
with `workers` threads runs one numpy kernel per block; numpy releases
the GIL inside the kernels. The executor map is the round barrier.

Within a round:
(a) each vertex is lifted by exactly one block;
(b) writes to the work vector are per-vertex disjoint;
(c) neighbour reads may see old or new values of the same round;
(d) next-frontier insertion is a test-and-set on a flag vector.

Both solvers apply the clamped lift max(f(v), δ(f, v)), so lifting a
satisfied vertex is a no-op. Vertices at TOP never re-enter a frontier.
=============================================================================
"""

import logging
import threading
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from functools import partial

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.arena.types import GameArena, IntArray
from src.config.settings import get_settings
from src.errors import BoundExhaustedError, InvariantViolationError, SolveTimeoutError
from src.measure.progress import ProgressMeasure, violations, winning_set
from src.solvers.frontier import Frontier
from src.solvers.kernels import (
    choose_chunk_size,
    lift_block,
    partition,
    predecessors_of,
    seed_vertices,
)
from src.solvers.report import (
    AdjacencyMapping,
    Deadline,
    MappingKind,
    SolveReport,
    Variant,
    sweep_cap,
)
from src.telemetry.prometheus import record_solve, record_work, set_arena_size

logger = logging.getLogger(__name__)


class ParallelConfig(BaseModel):
    """Worker count, adjacency mapping and the optional sweep cap override."""

    model_config = ConfigDict(frozen=True)

    workers: int = Field(default=1, ge=1)
    mapping: MappingKind = MappingKind.VERTEX

    # None picks the chunk size from the arena's average out-degree
    chunk_size: int | None = Field(default=None, ge=1)
    sweep_bound: int | None = Field(default=None, ge=1)

    @field_validator("chunk_size")
    @classmethod
    def _power_of_two(cls, value: int | None) -> int | None:
        if value is not None and value & (value - 1):
            raise ValueError(f"chunk size must be a power of two, got {value}")
        return value

    def resolve_mapping(self, arena: GameArena) -> AdjacencyMapping:
        if self.mapping == MappingKind.VERTEX:
            return AdjacencyMapping(MappingKind.VERTEX, 1)
        return AdjacencyMapping(MappingKind.CHUNK, self.chunk_size or choose_chunk_size(arena))


class _BlockRunner:
    """Shared work vector plus the executor that lifts blocks of it."""

    def __init__(self, arena: GameArena, mapping: AdjacencyMapping, workers: int, pool: ThreadPoolExecutor | None):
        self.arena = arena
        self.mapping = mapping
        self.workers = workers
        self.pool = pool
        self.top = arena.mg + 1
        self.work: IntArray = np.zeros(arena.num_vertices, dtype=np.int64)

    def lift(self, block: IntArray) -> IntArray:
        """Clamped lift of one block; returns the vertices whose value rose."""
        before = self.work[block]
        lifted = lift_block(self.work, self.arena, block, self.mapping)
        after = np.maximum(before, lifted)
        raised = after != before
        self.work[block] = after
        return block[raised]

    def run(self, vertices: IntArray, task: Callable[[IntArray], int]) -> int:
        """Apply `task` to every block of `vertices`; returns the summed task results."""
        blocks = partition(vertices, self.arena, self.mapping, self.workers)
        if self.pool is None:
            return sum(task(block) for block in blocks)
        return sum(self.pool.map(task, blocks))

    def measure(self) -> ProgressMeasure:
        return ProgressMeasure.from_work(self.arena, self.work)


@contextmanager
def _executor(workers: int) -> Iterator[ThreadPoolExecutor | None]:
    if workers == 1:
        yield None
        return
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="egsolve") as pool:
        yield pool


def _resolve_debug(debug_checks: bool | None) -> bool:
    return get_settings().debug_checks if debug_checks is None else debug_checks


def _finish(
    runner: _BlockRunner,
    variant: Variant,
    deadline: Deadline,
    *,
    lifts: int,
    changes: int,
    rounds: int,
    round_log: list[int],
) -> SolveReport:
    measure = runner.measure()
    w0, w1 = winning_set(measure)
    return SolveReport(
        measure=measure,
        w0=w0,
        w1=w1,
        lifts=lifts,
        pops=0,
        changes=changes,
        rounds=rounds,
        wall_time=deadline.elapsed,
        variant=variant,
        mapping=runner.mapping,
        workers=runner.workers,
        round_log=round_log,
    )


@contextmanager
def _instrumented(variant: Variant, mapping: AdjacencyMapping, deadline: Deadline) -> Iterator[None]:
    try:
        yield
    except SolveTimeoutError:
        record_solve(variant, mapping.label, "timeout", deadline.elapsed)
        raise
    except Exception:
        record_solve(variant, mapping.label, "error", deadline.elapsed)
        raise


# =============================================================================
# Full Sweeps
# =============================================================================


def solve_sweep(
    arena: GameArena,
    config: ParallelConfig | None = None,
    *,
    timeout: float | None = None,
    debug_checks: bool | None = None,
) -> SolveReport:
    """
    Repeat parallel full sweeps of the clamped lift until nothing changes.

    Raises BoundExhaustedError if config.sweep_bound (default
    |E|·(M_G + 1) + 1) sweeps pass without reaching the fixpoint.
    """
    config = config or ParallelConfig()
    mapping = config.resolve_mapping(arena)
    debug = _resolve_debug(debug_checks)
    deadline = Deadline(timeout)
    cap = config.sweep_bound or sweep_cap(arena)
    set_arena_size(arena.num_vertices, arena.num_edges, arena.mg)
    logger.info(
        f"[SWEEP] Solving |V|={arena.num_vertices} |E|={arena.num_edges} M_G={arena.mg} "
        f"mapping={mapping.label} workers={config.workers} cap={cap}"
    )

    everything = np.arange(arena.num_vertices, dtype=np.int64)
    lifts = changes = sweeps = 0
    round_log: list[int] = []

    with _instrumented(Variant.SWEEP, mapping, deadline), _executor(config.workers) as pool:
        runner = _BlockRunner(arena, mapping, config.workers, pool)
        more = True
        while more:
            if sweeps == cap:
                raise BoundExhaustedError(sweeps)
            deadline.check()
            previous = runner.work.copy() if debug else None

            # One-way latch, read only after the executor barrier
            latch = threading.Event()
            raised = runner.run(everything, partial(_sweep_block, runner, latch))

            sweeps += 1
            lifts += arena.num_vertices
            changes += raised
            round_log.append(raised)
            more = latch.is_set()
            if previous is not None and not np.all(runner.work >= previous):
                raise InvariantViolationError("sweep lowered a value")
            logger.debug(f"[SWEEP] Sweep {sweeps}: {raised} values raised")

        report = _finish(
            runner, Variant.SWEEP, deadline, lifts=lifts, changes=changes, rounds=sweeps, round_log=round_log
        )

    record_solve(Variant.SWEEP, mapping.label, "ok", report.wall_time)
    record_work(Variant.SWEEP, report.lifts, report.rounds)
    logger.info(f"[SWEEP] Done: {report.summary()}")
    return report


def _sweep_block(runner: _BlockRunner, latch: threading.Event, block: IntArray) -> int:
    raised = runner.lift(block)
    if raised.size:
        latch.set()
    return int(raised.size)


# =============================================================================
# Frontier Rounds
# =============================================================================


def solve_frontier(
    arena: GameArena,
    config: ParallelConfig | None = None,
    *,
    timeout: float | None = None,
    debug_checks: bool | None = None,
) -> SolveReport:
    """
    Round-based frontier solver.

    The first frontier is the sequential solver's seed set. Each round
    lifts the whole frontier in parallel; predecessors of raised vertices
    form the next frontier. Ends when the frontier is empty.
    """
    config = config or ParallelConfig()
    mapping = config.resolve_mapping(arena)
    debug = _resolve_debug(debug_checks)
    deadline = Deadline(timeout)
    set_arena_size(arena.num_vertices, arena.num_edges, arena.mg)
    logger.info(
        f"[FRONTIER] Solving |V|={arena.num_vertices} |E|={arena.num_edges} M_G={arena.mg} "
        f"mapping={mapping.label} workers={config.workers}"
    )

    frontier = Frontier(arena.num_vertices, seed_vertices(arena))
    lifts = changes = rounds = 0
    round_log: list[int] = []

    with _instrumented(Variant.FRONTIER, mapping, deadline), _executor(config.workers) as pool:
        runner = _BlockRunner(arena, mapping, config.workers, pool)
        while frontier:
            deadline.check()
            previous = None
            if debug:
                _check_frontier_complete(runner, frontier)
                previous = runner.work.copy()

            size = len(frontier)
            raised = runner.run(frontier.current, partial(_frontier_block, runner, frontier))

            rounds += 1
            lifts += size
            changes += raised
            round_log.append(size)
            if previous is not None and not np.all(runner.work >= previous):
                raise InvariantViolationError("frontier round lowered a value")
            logger.debug(f"[FRONTIER] Round {rounds}: {size} lifted, {raised} raised")

            frontier.advance()
            frontier.current = frontier.current[runner.work[frontier.current] != runner.top]

        if debug:
            _check_frontier_complete(runner, frontier)
        report = _finish(
            runner, Variant.FRONTIER, deadline, lifts=lifts, changes=changes, rounds=rounds, round_log=round_log
        )

    record_solve(Variant.FRONTIER, mapping.label, "ok", report.wall_time)
    record_work(Variant.FRONTIER, report.lifts, report.rounds)
    logger.info(f"[FRONTIER] Done: {report.summary()}")
    return report


def _frontier_block(runner: _BlockRunner, frontier: Frontier, block: IntArray) -> int:
    raised = runner.lift(block)
    if raised.size:
        preds = predecessors_of(runner.arena, raised)
        frontier.insert(preds[runner.work[preds] != runner.top])
    return int(raised.size)


def _check_frontier_complete(runner: _BlockRunner, frontier: Frontier) -> None:
    violated = violations(runner.measure(), runner.arena)
    missing = violated[~np.isin(violated, frontier.current)]
    if missing.size:
        raise InvariantViolationError("violated vertex missing from frontier", vertex=int(missing[0]))
