"""
=============================================================================
Parallel Solver Tests
=============================================================================

WHAT THESE TESTS VERIFY:
------------------------
1. Sweep and frontier fixtures (round counts, no-change termination)
2. Bitwise-identical measures across workers {1,2,4,8} and both mappings
3. Chunked kernel == scalar lift; chunk-size heuristic
4. Frontier dedup, debug scans, sweep cap, cancellation
=============================================================================
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.arena.builder import build_arena
from src.errors import BoundExhaustedError, SolveTimeoutError
from src.formats.generator import Family, GenSpec, generate
from src.measure.progress import ProgressMeasure, lift
from src.measure.values import TOP
from src.solvers.frontier import Frontier
from src.solvers.kernels import (
    choose_chunk_size,
    chunk_size_for_degree,
    lift_chunked,
    seed_vertices,
    split_by_edges,
    split_by_vertices,
)
from src.solvers.parallel import ParallelConfig, solve_frontier, solve_sweep
from src.solvers.report import MappingKind, Variant
from src.solvers.sequential import solve_seq

CONFIGS = [
    ParallelConfig(workers=workers, mapping=MappingKind.VERTEX) for workers in (1, 2, 4, 8)
] + [
    ParallelConfig(workers=workers, mapping=MappingKind.CHUNK, chunk_size=h)
    for workers in (1, 2, 4, 8)
    for h in (1, 2, 4)
]


class TestSweep:
    """Full parallel sweeps."""

    def test_g1_two_sweeps(self, g1):
        report = solve_sweep(g1, ParallelConfig(workers=2))
        assert report.measure.values == (1, 0)
        assert report.rounds == 2
        assert report.round_log == [1, 0]
        assert report.variant == Variant.SWEEP

    def test_nonnegative_arena_single_sweep(self, neutral_loop):
        report = solve_sweep(neutral_loop)
        assert report.rounds == 1
        assert report.changes == 0

    def test_losing_loop(self, losing_loop):
        assert solve_sweep(losing_loop).measure[0] is TOP

    def test_sweep_bound_override(self, g1):
        with pytest.raises(BoundExhaustedError) as info:
            solve_sweep(g1, ParallelConfig(sweep_bound=1))
        assert info.value.sweeps == 1

    def test_default_cap_is_enough(self, random_arenas):
        for arena in random_arenas:
            report = solve_sweep(arena)
            assert report.lifts <= report.lift_bound(arena)
            assert report.changes <= report.change_bound(arena)


class TestFrontier:
    """Round-based frontier solver."""

    def test_g1_rounds(self, g1):
        report = solve_frontier(g1)
        assert report.measure.values == (1, 0)
        # {0} lifts to 1, then {1} is a no-change lift, then the frontier is empty
        assert report.round_log == [1, 1]
        assert report.rounds == 2

    def test_nonnegative_arena_has_empty_frontier(self, neutral_loop):
        report = solve_frontier(neutral_loop)
        assert report.rounds == 0
        assert report.lifts == 0

    def test_top_vertices_leave_the_frontier(self, losing_loop):
        report = solve_frontier(losing_loop)
        assert report.measure[0] is TOP
        assert report.w1 == frozenset({0})
        assert report.round_log == [1, 1]

    def test_seed_set(self):
        arena = build_arena([(0, 0, -1), (1, 1, 2), (1, 0, -1), (2, 2, -1), (2, 1, 1), (3, 3, 0)], [0, 0, 1, 1])
        assert seed_vertices(arena).tolist() == [0, 2]

    def test_bounds(self, random_arenas):
        for arena in random_arenas:
            report = solve_frontier(arena, ParallelConfig(workers=2))
            assert report.lifts <= report.lift_bound(arena)
            assert report.changes <= report.change_bound(arena)

    def test_debug_scans(self, random_arenas):
        for arena in random_arenas:
            solve_frontier(arena, ParallelConfig(workers=4), debug_checks=True)
            solve_sweep(arena, ParallelConfig(workers=4), debug_checks=True)


class TestEquivalence:
    """Every variant reaches the same least fixpoint."""

    def test_all_configs_match_seq(self, random_arenas):
        for arena in random_arenas:
            expected = solve_seq(arena).measure
            for config in CONFIGS:
                assert solve_frontier(arena, config).measure == expected, config
                assert solve_sweep(arena, config).measure == expected, config

    def test_larger_arena(self):
        arena = generate(GenSpec(n=400, d=3.0, wmin=-5, wmax=5, seed=11))
        expected = solve_seq(arena).measure
        assert solve_frontier(arena, ParallelConfig(workers=4, mapping=MappingKind.CHUNK)).measure == expected
        assert solve_sweep(arena, ParallelConfig(workers=8)).measure == expected

    def test_frontier_lifts_less_than_sweep_on_chain(self):
        arena = generate(GenSpec(n=60, d=2.0, wmin=-3, wmax=3, seed=5, family=Family.CYCLECHAIN))
        assert solve_frontier(arena).lifts < solve_sweep(arena).lifts


class TestChunkedKernel:
    """Lane-partitioned min/max reduction."""

    def test_matches_scalar_lift(self, random_arenas):
        for arena in random_arenas:
            f = solve_seq(arena).measure
            zero = ProgressMeasure.zeros(arena)
            for v in range(arena.num_vertices):
                for h in (1, 2, 4, 8):
                    assert lift_chunked(f, v, arena, h) == lift(f, v, arena)
                    assert lift_chunked(zero, v, arena, h) == lift(zero, v, arena)

    def test_seven_successors_four_lanes(self):
        edges = [(0, 1, w) for w in (-1, 2, -3, 0, 1, -2, 3)] + [(1, 1, -1)]
        arena = build_arena(edges, [0, 0])
        f = ProgressMeasure(arena, [0, 2])
        assert lift_chunked(f, 0, arena, 4) == lift(f, 0, arena) == 0

    def test_player1_with_top_candidate(self):
        arena = build_arena([(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 1, -3), (2, 2, -3), (3, 3, -3)], [1, 0, 0, 0])
        f = ProgressMeasure(arena, [0, 0, 3, TOP])
        assert lift_chunked(f, 0, arena, 2) is TOP

    def test_rejects_non_power_of_two(self, g1):
        with pytest.raises(ValueError):
            lift_chunked(ProgressMeasure.zeros(g1), 0, g1, 3)

    @pytest.mark.parametrize(("degree", "expected"), [(2.76, 2), (1.16, 1), (6.14, 4), (0.4, 1), (8.0, 8)])
    def test_chunk_size_heuristic(self, degree, expected):
        assert chunk_size_for_degree(degree) == expected

    def test_choose_chunk_size_from_stats(self):
        arena = build_arena([(0, 0, 0), (0, 0, 1), (0, 0, 2)], [0])
        assert choose_chunk_size(arena) == 2


class TestConfig:
    """ParallelConfig validation."""

    def test_chunk_size_power_of_two(self):
        with pytest.raises(ValidationError):
            ParallelConfig(mapping=MappingKind.CHUNK, chunk_size=3)

    def test_workers_positive(self):
        with pytest.raises(ValidationError):
            ParallelConfig(workers=0)

    def test_resolved_mapping(self, g1):
        assert ParallelConfig().resolve_mapping(g1).label == "vertex"
        assert ParallelConfig(mapping=MappingKind.CHUNK).resolve_mapping(g1).label == "chunk1"
        assert ParallelConfig(mapping=MappingKind.CHUNK, chunk_size=4).resolve_mapping(g1).chunk_size == 4


class TestFrontierSet:
    """At-most-once insertion per round."""

    def test_duplicates_collapse(self):
        frontier = Frontier(6, np.array([0], dtype=np.int64))
        assert frontier.insert(np.array([3, 1, 3, 3], dtype=np.int64)) == 2
        assert frontier.insert(np.array([1, 5], dtype=np.int64)) == 1
        frontier.advance()
        assert frontier.current.tolist() == [1, 3, 5]
        assert not frontier.in_next.any()

    def test_flags_reset_between_rounds(self):
        frontier = Frontier(3, np.array([], dtype=np.int64))
        frontier.insert(np.array([2], dtype=np.int64))
        frontier.advance()
        assert frontier.insert(np.array([2], dtype=np.int64)) == 1

    def test_empty(self):
        frontier = Frontier(3, np.array([], dtype=np.int64))
        assert not frontier
        frontier.advance()
        assert len(frontier) == 0


class TestPartitioning:
    """Block splits cover the frontier exactly once, in order."""

    def test_vertex_blocks(self):
        vertices = np.arange(10, dtype=np.int64)
        blocks = split_by_vertices(vertices, 3)
        assert np.concatenate(blocks).tolist() == list(range(10))
        assert [len(b) for b in blocks] == [4, 3, 3]

    def test_edge_blocks_balance_degree(self):
        edges = [(0, 0, 0)] * 9 + [(v, v, 0) for v in range(1, 10)]
        arena = build_arena(edges, [0] * 10)
        blocks = split_by_edges(np.arange(10, dtype=np.int64), arena, 2)
        assert np.concatenate(blocks).tolist() == list(range(10))
        assert blocks[0].tolist() == [0]

    def test_more_workers_than_vertices(self, g1):
        assert len(split_by_vertices(np.arange(2, dtype=np.int64), 8)) == 2


class TestCancellation:
    """Deadline checks at round boundaries."""

    def test_frontier_timeout(self, g1):
        with pytest.raises(SolveTimeoutError):
            solve_frontier(g1, timeout=0.0)

    def test_sweep_timeout(self, g1):
        with pytest.raises(SolveTimeoutError):
            solve_sweep(g1, ParallelConfig(workers=2), timeout=0.0)
