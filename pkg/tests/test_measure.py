"""
Tests for energy values, progress measures, lifting and strategy extraction.
"""

import pytest

from src.arena.builder import build_arena, reorder_by_owner
from src.errors import ArithmeticOverflowError, NoWitnessError
from src.measure.progress import (
    ProgressMeasure,
    is_epm,
    lift,
    map_back,
    violations,
    winning_set,
)
from src.measure.strategy import extract_strategy
from src.measure.values import (
    INT64_MAX,
    TOP,
    cap,
    format_value,
    ominus,
    precedes,
    value_max,
    value_min,
)
from src.solvers.sequential import solve_seq


class TestValues:
    """The ordered codomain {0..M_G} ∪ {TOP}."""

    def test_top_is_maximal(self):
        assert precedes(5, TOP)
        assert precedes(TOP, TOP)
        assert not precedes(TOP, 5)
        assert precedes(3, 3)

    def test_min_max(self):
        assert value_max(3, TOP) is TOP
        assert value_min(3, TOP) == 3
        assert value_max(2, 7) == 7

    def test_ominus_truncates(self):
        assert ominus(3, 5) == 0
        assert ominus(3, -2) == 5
        assert ominus(TOP, -100) is TOP
        assert ominus(TOP, 100) is TOP

    def test_ominus_overflow(self):
        with pytest.raises(ArithmeticOverflowError):
            ominus(INT64_MAX, -1)

    def test_cap(self):
        assert cap(4, 4) == 4
        assert cap(5, 4) is TOP
        assert cap(TOP, 4) is TOP

    def test_format(self):
        assert format_value(TOP) == "T"
        assert format_value(12) == "12"
        assert str(TOP) == "T"


class TestProgressMeasure:
    """Storage, equality and the EPM check."""

    def test_zeros(self, g1):
        f = ProgressMeasure.zeros(g1)
        assert list(f) == [0, 0]
        assert len(f) == 2

    def test_top_round_trip(self, g1):
        f = ProgressMeasure(g1, [TOP, 0])
        assert f[0] is TOP
        assert f.values == (TOP, 0)

    def test_work_vector_encoding(self, g1):
        f = ProgressMeasure(g1, [TOP, 1])
        assert f.to_work().tolist() == [2, 1]
        assert ProgressMeasure.from_work(g1, f.to_work()) == f

    def test_rejects_negative_and_wrong_length(self, g1):
        with pytest.raises(ValueError):
            ProgressMeasure(g1, [-1, 0])
        with pytest.raises(ValueError):
            ProgressMeasure(g1, [0])

    def test_minus_one_is_not_top(self, g1):
        # -1 is the internal TOP code; it must not pass as a finite value
        with pytest.raises(ValueError, match="nonnegative"):
            ProgressMeasure(g1, [-1, 0])
        with pytest.raises(ValueError):
            ProgressMeasure(g1, [0, -1])

    def test_claims_above_mg_are_kept(self, g1):
        f = ProgressMeasure(g1, [5, 0])
        assert f[0] == 5
        assert not f.within_bounds()

    def test_equality_is_bound_to_arena(self, g1):
        other = build_arena([(0, 1, -1), (1, 0, 2)], [0, 1])
        assert ProgressMeasure(g1, [1, 0]) == ProgressMeasure(g1, [1, 0])
        assert ProgressMeasure(g1, [1, 0]) != ProgressMeasure(other, [1, 0])

    def test_leq(self, g1):
        assert ProgressMeasure(g1, [1, 0]).leq(ProgressMeasure(g1, [TOP, 0]))
        assert not ProgressMeasure(g1, [TOP, 0]).leq(ProgressMeasure(g1, [3, 0]))

    def test_g1_least_measure_is_epm(self, g1):
        assert is_epm(ProgressMeasure(g1, [1, 0]), g1)

    def test_g1_zero_measure_violates_at_player0(self, g1):
        f = ProgressMeasure.zeros(g1)
        assert not is_epm(f, g1)
        assert violations(f, g1).tolist() == [0]

    def test_claims_above_mg_are_capped_when_checked(self, g1):
        # Needs 4 ⊖ -1 = 5 and 5 ⊖ 1 = 4 both exceed M_G = 1 and become TOP
        assert violations(ProgressMeasure(g1, [5, 4]), g1).tolist() == [0, 1]
        assert not is_epm(ProgressMeasure(g1, [5, 4]), g1)

    def test_all_top_is_always_epm(self, g1):
        assert is_epm(ProgressMeasure(g1, [TOP, TOP]), g1)

    def test_finite_player1_with_top_successor_violates(self):
        arena = build_arena([(0, 1, 0), (1, 1, -1)], [1, 0])
        assert violations(ProgressMeasure(arena, [0, TOP]), arena).tolist() == [0]

    def test_winning_set(self, g1):
        w0, w1 = winning_set(ProgressMeasure(g1, [TOP, 0]))
        assert w0 == frozenset({1})
        assert w1 == frozenset({0})

    def test_replace(self, g1):
        f = ProgressMeasure.zeros(g1).replace(g1, 0, TOP)
        assert f.values == (TOP, 0)


class TestLift:
    """Scalar lifting operator."""

    def test_g1_player0(self, g1):
        assert lift(ProgressMeasure.zeros(g1), 0, g1) == 1

    def test_g1_player1(self, g1):
        assert lift(ProgressMeasure(g1, [1, 0]), 1, g1) == 0

    def test_cap_to_top(self, losing_loop):
        assert lift(ProgressMeasure(losing_loop, [1]), 0, losing_loop) is TOP

    def test_player1_takes_top(self):
        arena = build_arena([(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 1, -3), (2, 2, -3), (3, 3, -3)], [1, 0, 0, 0])
        f = ProgressMeasure(arena, [0, 0, 3, TOP])
        assert lift(f, 0, arena) is TOP

    def test_player0_prefers_finite(self):
        arena = build_arena([(0, 1, 0), (0, 2, 0), (1, 1, -1), (2, 2, 0)], [0, 0, 0])
        assert lift(ProgressMeasure(arena, [0, TOP, 0]), 0, arena) == 0

    def test_unbound_measure_rejected(self, g1, neutral_loop):
        with pytest.raises(ValueError):
            lift(ProgressMeasure.zeros(neutral_loop), 0, g1)


class TestStrategy:
    """Witness extraction from least measures."""

    def test_g1(self, g1):
        strategy = extract_strategy(ProgressMeasure(g1, [1, 0]), g1)
        assert dict(strategy.choice) == {0: 1}

    def test_first_witness_in_row_order(self, two_loops):
        strategy = extract_strategy(ProgressMeasure(two_loops, [0]), two_loops)
        assert strategy.get(0) == 0

    def test_top_vertices_have_no_choice(self, losing_loop):
        assert 0 not in extract_strategy(ProgressMeasure(losing_loop, [TOP]), losing_loop)

    def test_non_epm_has_no_witness(self, g1):
        with pytest.raises(NoWitnessError) as info:
            extract_strategy(ProgressMeasure.zeros(g1), g1)
        assert info.value.vertex == 0


class TestMapBack:
    """Measures computed on owner-reordered arenas."""

    def test_reordered_solution_maps_back(self, random_arenas):
        for arena in random_arenas[:20]:
            reordered, perm = reorder_by_owner(arena)
            pulled = map_back(solve_seq(reordered).measure, perm, arena)
            assert pulled == solve_seq(arena).measure
