"""Single entry point over the three solver variants."""

from src.arena.builder import reorder_by_owner
from src.arena.types import GameArena
from src.measure.progress import map_back, winning_set
from src.solvers.parallel import ParallelConfig, solve_frontier, solve_sweep
from src.solvers.report import SolveReport, Variant
from src.solvers.sequential import Order, solve_seq


def solve(
    arena: GameArena,
    variant: Variant | str = Variant.SEQ,
    config: ParallelConfig | None = None,
    *,
    timeout: float | None = None,
    order: Order | None = None,
    reorder: bool = False,
) -> SolveReport:
    """
    Run one variant. With reorder=True the arena is solved with player-0
    vertices first and the measure is mapped back to the original ids.
    """
    variant = Variant(variant)
    target, perm = reorder_by_owner(arena) if reorder else (arena, None)

    if variant == Variant.SEQ:
        report = solve_seq(target, order=order, timeout=timeout)
    elif variant == Variant.SWEEP:
        report = solve_sweep(target, config, timeout=timeout)
    else:
        report = solve_frontier(target, config, timeout=timeout)

    if perm is not None:
        report.measure = map_back(report.measure, perm, arena)
        report.w0, report.w1 = winning_set(report.measure)
    return report
