# Arena package
from src.arena.builder import (
    build_arena,
    build_arena_from_arrays,
    compute_stats,
    invert_permutation,
    reorder_by_owner,
)
from src.arena.types import ArenaStats, GameArena, Owner

__all__ = [
    "ArenaStats",
    "GameArena",
    "Owner",
    "build_arena",
    "build_arena_from_arrays",
    "compute_stats",
    "invert_permutation",
    "reorder_by_owner",
]
