"""
=============================================================================
Sequential Worklist Solver
=============================================================================

Computes the least energy progress measure with a worklist of vertices
whose local condition may be violated, plus per-vertex counters on
player-0 vertices that avoid rescanning successor lists.

ALGORITHM:
----------
1. Seed L with player-0 vertices whose every out-edge is negative and
   player-1 vertices with some negative out-edge; f starts at 0.
2. count(v), for player-0 vertices outside L, is the number of out-edges
   (v, v') with f(v) ⪰ f(v') ⊖ w(v, v').
3. Pop v, set f(v) := δ(f, v), recount v if it belongs to player 0.
4. For each predecessor v' of v whose edge to v became violated:
   player-1 predecessors are scheduled; player-0 predecessors lose one
   unit of count (if the edge was satisfied before) and are scheduled
   once the count reaches zero.

Vertices at TOP are never rescheduled. Works in O(|V|·|E|·W_max) time.

COUNTER INVARIANT:
------------------
For every player-0 vertex v outside L with f(v) finite, count(v) equals
the number of satisfied out-edges of v and is >= 1. With debug checks
enabled the invariant is verified at every loop head.
=============================================================================
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Literal

from src.arena.types import GameArena
from src.config.settings import get_settings
from src.errors import InvariantViolationError, SolveTimeoutError
from src.measure.progress import ProgressMeasure, winning_set
from src.solvers.report import PER_VERTEX, Deadline, SolveReport, Variant
from src.telemetry.prometheus import record_solve, record_work, set_arena_size

logger = logging.getLogger(__name__)

Order = Literal["fifo", "lifo"]


@dataclass
class SeqState:
    """Mutable solver state, exposed for invariant checks."""

    arena: GameArena
    top: int  # work encoding of TOP (M_G + 1)
    f: list[int]
    count: list[int]
    in_list: list[bool]
    worklist: deque[int]


def _needed(target_value: int, weight: int, top: int) -> int:
    """f(v') ⊖ w in work encoding, TOP for anything above M_G."""
    if target_value == top:
        return top
    return min(max(0, target_value - weight), top)


def _satisfied_count(state: SeqState, v: int) -> int:
    adj = state.arena.lists
    f, top = state.f, state.top
    value = f[v]
    total = 0
    for k in range(adj.csr_offsets[v], adj.csr_offsets[v + 1]):
        if value >= _needed(f[adj.csr_targets[k]], adj.csr_weights[k], top):
            total += 1
    return total


def check_counter_invariant(state: SeqState) -> bool:
    """count(v) is exact and positive for finite player-0 vertices outside L."""
    owners = state.arena.lists.owners
    for v in range(state.arena.num_vertices):
        if owners[v] != 0 or state.in_list[v] or state.f[v] == state.top:
            continue
        actual = _satisfied_count(state, v)
        if state.count[v] != actual or actual < 1:
            return False
    return True


def check_worklist_complete(state: SeqState) -> bool:
    """Every vertex whose local condition fails is in L."""
    adj = state.arena.lists
    f, top = state.f, state.top
    for v in range(state.arena.num_vertices):
        if state.in_list[v] or f[v] == top:
            continue
        if adj.owners[v] == 0:
            if _satisfied_count(state, v) == 0:
                return False
        elif _satisfied_count(state, v) != adj.csr_offsets[v + 1] - adj.csr_offsets[v]:
            return False
    return True


class SequentialSolver:
    """
    Worklist solver over one arena.

    step() performs one pop/lift/notify iteration so tests can observe
    the state between iterations; run() drives it to completion.
    """

    def __init__(
        self,
        arena: GameArena,
        *,
        order: Order = "fifo",
        debug_checks: bool = False,
        deadline: Deadline | None = None,
        check_interval: int = 4096,
    ):
        if order not in ("fifo", "lifo"):
            raise ValueError(f"unknown worklist order: {order!r}")
        self.arena = arena
        self.order = order
        self.debug_checks = debug_checks
        self.deadline = deadline or Deadline()
        self.check_interval = check_interval

        self.lifts = 0
        self.pops = 0
        self.changes = 0
        self.state = self._initial_state()

    def _initial_state(self) -> SeqState:
        arena = self.arena
        adj = arena.lists
        n = arena.num_vertices
        state = SeqState(
            arena=arena,
            top=arena.mg + 1,
            f=[0] * n,
            count=[0] * n,
            in_list=[False] * n,
            worklist=deque(),
        )
        for v in range(n):
            weights = adj.csr_weights[adj.csr_offsets[v] : adj.csr_offsets[v + 1]]
            if adj.owners[v] == 0:
                seeded = all(w < 0 for w in weights)
                # With f ≡ 0 an edge is satisfied iff its weight is nonnegative
                state.count[v] = 0 if seeded else sum(1 for w in weights if w >= 0)
            else:
                seeded = any(w < 0 for w in weights)
            if seeded:
                state.worklist.append(v)
                state.in_list[v] = True

        logger.debug(f"[SEQ] Seeded worklist with {len(state.worklist)} of {n} vertices")
        return state

    def _schedule(self, v: int) -> None:
        if not self.state.in_list[v]:
            self.state.in_list[v] = True
            self.state.worklist.append(v)

    def _lift(self, v: int) -> int:
        adj = self.arena.lists
        f, top = self.state.f, self.state.top
        start, end = adj.csr_offsets[v], adj.csr_offsets[v + 1]
        candidates = (_needed(f[adj.csr_targets[k]], adj.csr_weights[k], top) for k in range(start, end))
        return min(candidates) if adj.owners[v] == 0 else max(candidates)

    def step(self) -> bool:
        """One iteration of the main loop. Returns False once L is empty."""
        state = self.state
        if not state.worklist:
            return False

        if self.debug_checks:
            self._verify_invariants()

        v = state.worklist.popleft() if self.order == "fifo" else state.worklist.pop()
        state.in_list[v] = False
        self.pops += 1

        adj = self.arena.lists
        f, top = state.f, state.top
        old = f[v]
        new = self._lift(v)
        self.lifts += 1
        if self.debug_checks and new < old:
            raise InvariantViolationError("lift lowered a value", vertex=v)
        f[v] = new

        if adj.owners[v] == 0:
            state.count[v] = _satisfied_count(state, v)

        # An unchanged value cannot newly violate any predecessor edge
        if new == old:
            return True
        self.changes += 1

        for k in range(adj.csc_offsets[v], adj.csc_offsets[v + 1]):
            u = adj.csc_sources[k]
            fu = f[u]
            if fu == top:
                continue
            w = adj.csc_weights[k]
            if fu >= _needed(new, w, top):
                continue
            if adj.owners[u] != 0:
                self._schedule(u)
            elif u == v:
                # Self-loop: the recount above already saw the new value
                if state.count[u] <= 0:
                    self._schedule(u)
            else:
                if fu >= _needed(old, w, top):
                    state.count[u] -= 1
                if state.count[u] <= 0:
                    self._schedule(u)

        return True

    def _verify_invariants(self) -> None:
        if not check_counter_invariant(self.state):
            raise InvariantViolationError("player-0 counter out of sync")
        if not check_worklist_complete(self.state):
            raise InvariantViolationError("violated vertex missing from worklist")

    def run(self) -> SolveReport:
        """Drain the worklist and package the result."""
        while self.step():
            if self.pops % self.check_interval == 0:
                self.deadline.check()

        if self.debug_checks:
            self._verify_invariants()

        measure = ProgressMeasure._from_encoded(self.arena, self._encoded())
        w0, w1 = winning_set(measure)
        return SolveReport(
            measure=measure,
            w0=w0,
            w1=w1,
            lifts=self.lifts,
            pops=self.pops,
            changes=self.changes,
            rounds=0,
            wall_time=self.deadline.elapsed,
            variant=Variant.SEQ,
            mapping=PER_VERTEX,
            workers=1,
        )

    def _encoded(self) -> list[int]:
        top = self.state.top
        return [-1 if value == top else value for value in self.state.f]


def solve_seq(
    arena: GameArena,
    *,
    order: Order | None = None,
    timeout: float | None = None,
    debug_checks: bool | None = None,
) -> SolveReport:
    """
    Least energy progress measure by the sequential worklist algorithm.

    Unset keyword arguments fall back to get_settings(). Raises
    SolveTimeoutError once `timeout` seconds have passed.
    """
    settings = get_settings()
    solver = SequentialSolver(
        arena,
        order=order or settings.worklist_order,
        debug_checks=settings.debug_checks if debug_checks is None else debug_checks,
        deadline=Deadline(timeout),
        check_interval=settings.cancel_check_interval,
    )
    set_arena_size(arena.num_vertices, arena.num_edges, arena.mg)
    logger.info(f"[SEQ] Solving |V|={arena.num_vertices} |E|={arena.num_edges} M_G={arena.mg} order={solver.order}")

    try:
        report = solver.run()
    except SolveTimeoutError:
        record_solve(Variant.SEQ, PER_VERTEX.label, "timeout", solver.deadline.elapsed)
        raise
    except Exception:
        record_solve(Variant.SEQ, PER_VERTEX.label, "error", solver.deadline.elapsed)
        raise

    record_solve(Variant.SEQ, PER_VERTEX.label, "ok", report.wall_time)
    record_work(Variant.SEQ, report.lifts, report.rounds)
    logger.info(f"[SEQ] Done: {report.summary()}")
    return report
