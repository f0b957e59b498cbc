"""
=============================================================================
Arena Builder
=============================================================================

Validates edge lists and assembles the dual CSR/CSC layout.

CONSTRUCTION STEPS:
-------------------
1. Range checks: owners in {0, 1}, vertex ids dense, |w| <= declared W_max
2. CSR: stable sort of edges by source (row order == input order)
3. Totality: every row non-empty
4. CSC: stable transpose of the CSR arrays (reproducible predecessor order)
5. Stats: M_G and degree figures, overflow-checked

Every construction path (builder, parser, generator) funnels through
build_arena_from_arrays, so the checks above run exactly once per arena.
=============================================================================
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from src.arena.types import INT64_MAX, ArenaStats, GameArena, IntArray, Owner
from src.config.settings import get_settings
from src.errors import (
    ArenaError,
    ArithmeticOverflowError,
    DanglingVertexError,
    NonTotalArenaError,
    WeightBoundError,
)

logger = logging.getLogger(__name__)


def build_arena(
    edges: Iterable[tuple[int, int, int]],
    owners: Sequence[Owner | int],
    *,
    max_abs_weight: int | None = None,
) -> GameArena:
    """
    Build a validated arena from (src, dst, weight) triples.

    Args:
        edges: Edge triples; order among one source's edges is preserved.
        owners: Owner of every vertex; its length fixes |V|.
        max_abs_weight: Declared W_max bound (defaults to the configured one).
    """
    edge_list = list(edges)
    bound = _resolve_bound(max_abs_weight)

    # Check weights as Python ints before numpy conversion can overflow
    for _, _, weight in edge_list:
        if not -bound <= weight <= bound:
            raise WeightBoundError(weight, bound)

    if edge_list:
        src, dst, weights = (np.asarray(col, dtype=np.int64) for col in zip(*edge_list, strict=True))
    else:
        src = dst = weights = np.zeros(0, dtype=np.int64)

    return build_arena_from_arrays(
        src, dst, weights, np.asarray([int(o) for o in owners], dtype=np.int64), max_abs_weight=bound
    )


def build_arena_from_arrays(
    src: npt.ArrayLike,
    dst: npt.ArrayLike,
    weights: npt.ArrayLike,
    owners: npt.ArrayLike,
    *,
    max_abs_weight: int | None = None,
) -> GameArena:
    """Array-level constructor shared by the builder, the parser and the generator."""
    bound = _resolve_bound(max_abs_weight)
    src_arr = np.asarray(src, dtype=np.int64)
    dst_arr = np.asarray(dst, dtype=np.int64)
    w_arr = np.asarray(weights, dtype=np.int64)
    owner_arr = np.asarray(owners, dtype=np.int64)

    n = int(owner_arr.shape[0])
    m = int(src_arr.shape[0])
    if n == 0:
        raise ArenaError("arena must contain at least one vertex")
    if not (dst_arr.shape[0] == m and w_arr.shape[0] == m):
        raise ArenaError("edge column lengths differ")

    bad_owner = np.flatnonzero((owner_arr != 0) & (owner_arr != 1))
    if bad_owner.size:
        raise ArenaError(f"vertex {int(bad_owner[0])} has owner {int(owner_arr[bad_owner[0]])}")

    for column in (src_arr, dst_arr):
        bad = np.flatnonzero((column < 0) | (column >= n))
        if bad.size:
            raise DanglingVertexError(int(column[bad[0]]), n)

    if m:
        too_big = np.flatnonzero((w_arr < -bound) | (w_arr > bound))
        if too_big.size:
            raise WeightBoundError(int(w_arr[too_big[0]]), bound)

    # CSR: stable sort keeps input order inside each row
    order = np.argsort(src_arr, kind="stable")
    counts = np.bincount(src_arr, minlength=n).astype(np.int64)
    sinks = np.flatnonzero(counts == 0)
    if sinks.size:
        raise NonTotalArenaError(int(sinks[0]))

    csr_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=csr_offsets[1:])
    csr_targets = dst_arr[order]
    csr_weights = w_arr[order]

    csc_offsets, csc_sources, csc_weights = _transpose(n, csr_offsets, csr_targets, csr_weights)

    owners_i8 = owner_arr.astype(np.int8)
    for array in (owners_i8, csr_offsets, csr_targets, csr_weights, csc_offsets, csc_sources, csc_weights):
        array.setflags(write=False)

    stats = _stats_from_arrays(owners_i8, csr_offsets, csr_weights)
    arena = GameArena(
        num_vertices=n,
        num_edges=m,
        owners=owners_i8,
        csr_offsets=csr_offsets,
        csr_targets=csr_targets,
        csr_weights=csr_weights,
        csc_offsets=csc_offsets,
        csc_sources=csc_sources,
        csc_weights=csc_weights,
        stats=stats,
    )
    logger.debug(
        f"[ARENA] Built arena: |V|={n} |E|={m} M_G={stats.mg} W_max={stats.w_max} "
        f"avg_deg={stats.avg_out_degree:.2f}"
    )
    return arena


def _transpose(
    n: int, csr_offsets: IntArray, csr_targets: IntArray, csr_weights: IntArray
) -> tuple[IntArray, IntArray, IntArray]:
    """Counting-sort transpose: CSC column v lists predecessors in CSR edge order."""
    row_of_edge = np.repeat(np.arange(n, dtype=np.int64), np.diff(csr_offsets))
    in_counts = np.bincount(csr_targets, minlength=n).astype(np.int64)
    csc_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(in_counts, out=csc_offsets[1:])

    # Stable sort by target == counting sort scatter in CSR order
    order = np.argsort(csr_targets, kind="stable")
    return csc_offsets, row_of_edge[order], csr_weights[order]


def compute_stats(arena: GameArena) -> ArenaStats:
    """Recompute M_G and degree statistics from the arena arrays."""
    return _stats_from_arrays(arena.owners, arena.csr_offsets, arena.csr_weights)


def _stats_from_arrays(
    owners: npt.NDArray[np.int8], csr_offsets: IntArray, csr_weights: IntArray
) -> ArenaStats:
    n = int(owners.shape[0])
    m = int(csr_weights.shape[0])
    degrees = np.diff(csr_offsets)

    # Each row is non-empty (totality), so reduceat never sees an empty segment
    row_min = np.minimum.reduceat(csr_weights, csr_offsets[:-1])
    row_max = np.maximum.reduceat(csr_weights, csr_offsets[:-1])

    # Exact Python-int sums; numpy int64 sums would wrap silently
    mg = sum(max(0, -w) for w in row_min.tolist())
    w_max = max(abs(int(row_min.min())), abs(int(row_max.max())))

    # Solver arithmetic touches values up to M_G + 1 (the top sentinel) minus any weight
    if mg + w_max + 1 > INT64_MAX:
        raise ArithmeticOverflowError(f"M_G={mg} with W_max={w_max} is not representable in 64 bits")

    return ArenaStats(
        mg=mg,
        w_max=w_max,
        max_out_degree=int(degrees.max()),
        avg_out_degree=m / n,
        num_player0=int(np.count_nonzero(owners == Owner.PLAYER0)),
    )


def reorder_by_owner(arena: GameArena) -> tuple[GameArena, IntArray]:
    """
    Renumber vertices so player-0 vertices occupy [0, |V0|).

    Returns the reordered arena and the permutation old-id -> new-id. The
    relative order inside each owner class is kept, and so is the edge
    order inside every CSR row.
    """
    new_order = np.argsort(arena.owners, kind="stable")  # new-id -> old-id
    perm = np.empty(arena.num_vertices, dtype=np.int64)
    perm[new_order] = np.arange(arena.num_vertices, dtype=np.int64)

    src = perm[arena.csr_sources]
    dst = perm[arena.csr_targets]
    reordered = build_arena_from_arrays(
        src,
        dst,
        arena.csr_weights,
        arena.owners[new_order],
        max_abs_weight=arena.stats.w_max,
    )
    perm.setflags(write=False)
    logger.debug(f"[ARENA] Reordered by owner: |V0|={arena.stats.num_player0}")
    return reordered, perm


def invert_permutation(perm: IntArray) -> IntArray:
    """new-id -> old-id from old-id -> new-id."""
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.shape[0], dtype=perm.dtype)
    return inverse


def _resolve_bound(max_abs_weight: int | None) -> int:
    if max_abs_weight is not None:
        return max_abs_weight
    return get_settings().max_abs_weight
