"""
=============================================================================
Property Suites
=============================================================================

Generated arenas drawn with hypothesis over GenSpec parameters.

The default run keeps example counts small. The `acceptance` marker
selects the full-size suites and the large-arena performance sanity
checks:

    pytest -m acceptance
=============================================================================
"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.arena.builder import reorder_by_owner
from src.formats.arena_format import parse_arena, write_arena
from src.formats.generator import Family, GenSpec, generate
from src.formats.solution_format import parse_solution, write_solution
from src.measure.progress import is_epm, map_back
from src.measure.strategy import extract_strategy
from src.oracle.attractor import min_credit_attractor
from src.oracle.strategies import verify_strategy
from src.solvers.parallel import ParallelConfig, solve_frontier, solve_sweep
from src.solvers.report import MappingKind
from src.solvers.sequential import SequentialSolver, check_counter_invariant, solve_seq

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

PARALLEL_CONFIGS = [ParallelConfig(workers=w) for w in (1, 2, 4, 8)] + [
    ParallelConfig(workers=w, mapping=MappingKind.CHUNK, chunk_size=h) for w in (1, 2, 4, 8) for h in (1, 2, 4)
]


def gen_specs(
    max_n: int = 10, max_d: float = 3.0, weight: int = 3, families: tuple[Family, ...] = tuple(Family)
) -> st.SearchStrategy[GenSpec]:
    return st.builds(
        GenSpec,
        n=st.integers(min_value=1, max_value=max_n),
        d=st.floats(min_value=1.0, max_value=max_d, allow_nan=False),
        wmin=st.integers(min_value=-weight, max_value=0),
        wmax=st.integers(min_value=0, max_value=weight),
        p0_frac=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        seed=st.integers(min_value=0, max_value=2**64 - 1),
        family=st.sampled_from(families),
    )


def solution_text(report, arena) -> str:
    return write_solution(report, extract_strategy(report.measure, arena))


def check_against_oracle(spec: GenSpec) -> None:
    arena = generate(spec)
    report = solve_seq(arena)
    assert report.measure == min_credit_attractor(arena)
    assert verify_strategy(arena, extract_strategy(report.measure, arena), report.w0)
    assert report.lifts <= report.lift_bound(arena)
    assert report.changes <= report.change_bound(arena)


def check_parallel_agree(spec: GenSpec, configs: list[ParallelConfig]) -> None:
    arena = generate(spec)
    expected = solution_text(solve_seq(arena), arena)
    for config in configs:
        assert solution_text(solve_frontier(arena, config), arena) == expected
        assert solution_text(solve_sweep(arena, config), arena) == expected


class TestSolverProperties:
    """Cross-checks on small generated arenas."""

    @FAST
    @given(gen_specs())
    def test_seq_matches_oracle(self, spec):
        check_against_oracle(spec)

    @settings(max_examples=25, deadline=None)
    @given(gen_specs(max_n=40))
    def test_parallel_matches_seq(self, spec):
        check_parallel_agree(spec, PARALLEL_CONFIGS[::3])

    @FAST
    @given(gen_specs(max_n=30))
    def test_reorder_invariance(self, spec):
        arena = generate(spec)
        reordered, perm = reorder_by_owner(arena)
        assert map_back(solve_seq(reordered).measure, perm, arena) == solve_seq(arena).measure

    @settings(max_examples=30, deadline=None)
    @given(gen_specs(max_n=12), st.sampled_from(["fifo", "lifo"]))
    def test_counter_invariant_every_step(self, spec, order):
        solver = SequentialSolver(generate(spec), order=order)
        while solver.step():
            assert check_counter_invariant(solver.state)


class TestFormatProperties:
    """Documents survive write/parse unchanged."""

    @FAST
    @given(gen_specs(max_n=50, weight=1000))
    def test_arena_round_trip(self, spec):
        text = write_arena(generate(spec))
        assert write_arena(parse_arena(text)) == text

    @FAST
    @given(gen_specs(max_n=20))
    def test_solution_round_trip(self, spec):
        arena = generate(spec)
        text = solution_text(solve_seq(arena), arena)
        document = parse_solution(text)
        assert write_solution(document.measure(arena), document.as_strategy()) == text
        assert is_epm(document.measure(arena), arena)


@pytest.mark.acceptance
class TestAcceptance:
    """Full-size suites; minutes, not seconds."""

    @settings(max_examples=5000, deadline=None, suppress_health_check=list(HealthCheck))
    @given(gen_specs())
    def test_oracle_equivalence(self, spec):
        check_against_oracle(spec)

    @settings(max_examples=1000, deadline=None, suppress_health_check=list(HealthCheck))
    @given(gen_specs(max_n=2000, families=(Family.RANDOM, Family.CYCLECHAIN)))
    def test_solver_equivalence(self, spec):
        check_parallel_agree(spec, PARALLEL_CONFIGS)

    @settings(max_examples=500, deadline=None, suppress_health_check=list(HealthCheck))
    @given(gen_specs(max_n=200))
    def test_reorder_invariance(self, spec):
        arena = generate(spec)
        reordered, perm = reorder_by_owner(arena)
        assert map_back(solve_seq(reordered).measure, perm, arena) == solve_seq(arena).measure

    @settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
    @given(gen_specs(max_n=50))
    def test_debug_checks(self, spec):
        solve_seq(generate(spec), debug_checks=True)

    def test_million_vertex_frontier(self):
        arena = generate(GenSpec(n=10**6, d=3.0, wmin=-10, wmax=10, seed=1))
        seq = solve_seq(arena)
        frontier = solve_frontier(arena, ParallelConfig(workers=8))
        assert frontier.measure == seq.measure
        assert frontier.wall_time <= 2 * seq.wall_time

    def test_cyclechain_stress(self):
        arena = generate(GenSpec(n=20_000, d=2.0, wmin=-10, wmax=10, seed=4, family=Family.CYCLECHAIN))
        frontier = solve_frontier(arena, ParallelConfig(workers=4))
        sweep = solve_sweep(arena, ParallelConfig(workers=4))
        assert frontier.measure == sweep.measure
        assert frontier.lifts < sweep.lifts
