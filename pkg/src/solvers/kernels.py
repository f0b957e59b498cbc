"""
=============================================================================
Vectorised Lifting Kernels
=============================================================================

Block kernels that evaluate δ for a batch of vertices against a solver
work vector (TOP stored as M_G + 1).

MAPPINGS:
---------
- PerVertex: each vertex's CSR row is reduced as one segment
  (np.minimum.reduceat / np.maximum.reduceat).
- Chunked(h): successor k of vertex v goes to lane (k - row_start) mod h;
  every lane keeps a partial min/max, then the h partials are combined by
  a halving tree reduction. Lane 0 always holds an edge (arenas are
  total), so the identity values never reach the result.

Both mappings return the same values as the scalar measure.lift.
=============================================================================
"""

import math

import numpy as np
import numpy.typing as npt

from src.arena.types import GameArena, IntArray
from src.measure.progress import ProgressMeasure
from src.measure.values import TOP, EnergyValue
from src.solvers.report import AdjacencyMapping, MappingKind


def candidates(work: IntArray, targets: IntArray, weights: IntArray, top: int) -> IntArray:
    """f(v') ⊖ w per edge, with every value above M_G collapsed to TOP."""
    values = work[targets]
    needed = np.maximum(values - weights, 0)
    needed = np.minimum(needed, top)
    needed[values == top] = top
    return needed


def _row_edges(arena: GameArena, vertices: IntArray) -> tuple[IntArray, IntArray, IntArray]:
    """Concatenated CSR edge indices of `vertices`, with segment starts and lengths."""
    starts = arena.csr_offsets[vertices]
    lengths = arena.csr_offsets[vertices + 1] - starts
    seg_starts = np.zeros(vertices.shape[0], dtype=np.int64)
    np.cumsum(lengths[:-1], out=seg_starts[1:])
    total = int(lengths.sum())
    edge_idx = np.arange(total, dtype=np.int64) + np.repeat(starts - seg_starts, lengths)
    return edge_idx, seg_starts, lengths


def lift_block(
    work: IntArray,
    arena: GameArena,
    vertices: IntArray,
    mapping: AdjacencyMapping,
) -> IntArray:
    """δ(f, v) for every v in `vertices` (unclamped)."""
    if vertices.size == 0:
        return np.empty(0, dtype=np.int64)

    top = arena.mg + 1
    edge_idx, seg_starts, lengths = _row_edges(arena, vertices)
    cand = candidates(work, arena.csr_targets[edge_idx], arena.csr_weights[edge_idx], top)
    player0 = arena.is_player0[vertices]

    if mapping.kind == MappingKind.VERTEX or mapping.chunk_size == 1:
        mins = np.minimum.reduceat(cand, seg_starts)
        maxs = np.maximum.reduceat(cand, seg_starts)
        return np.where(player0, mins, maxs)

    h = mapping.chunk_size
    slot = np.repeat(np.arange(vertices.shape[0], dtype=np.int64), lengths)
    lane = (np.arange(edge_idx.shape[0], dtype=np.int64) - np.repeat(seg_starts, lengths)) % h

    partial_min = np.full((vertices.shape[0], h), top + 1, dtype=np.int64)
    partial_max = np.full((vertices.shape[0], h), -1, dtype=np.int64)
    np.minimum.at(partial_min, (slot, lane), cand)
    np.maximum.at(partial_max, (slot, lane), cand)

    width = h
    while width > 1:
        half = width // 2
        np.minimum(partial_min[:, :half], partial_min[:, half:width], out=partial_min[:, :half])
        np.maximum(partial_max[:, :half], partial_max[:, half:width], out=partial_max[:, :half])
        width = half

    return np.where(player0, partial_min[:, 0], partial_max[:, 0])


def lift_chunked(f: ProgressMeasure, v: int, arena: GameArena, h: int) -> EnergyValue:
    """Scalar entry point of the chunked kernel; equals measure.lift(f, v, arena)."""
    if h < 1 or h & (h - 1):
        raise ValueError(f"chunk size must be a power of two, got {h}")
    if not 0 <= v < arena.num_vertices:
        raise IndexError(f"vertex {v} out of range [0, {arena.num_vertices})")
    mapping = AdjacencyMapping(MappingKind.CHUNK, h)
    value = int(lift_block(f.to_work(), arena, np.array([v], dtype=np.int64), mapping)[0])
    return TOP if value > arena.mg else value


def chunk_size_for_degree(avg_degree: float) -> int:
    """Largest power of two <= max(1, round(avg_degree)), rounding halves up."""
    rounded = max(1, math.floor(avg_degree + 0.5))
    return 1 << (rounded.bit_length() - 1)


def choose_chunk_size(arena: GameArena) -> int:
    return chunk_size_for_degree(arena.stats.avg_out_degree)


# =============================================================================
# Work Partitioning
# =============================================================================


def split_by_vertices(vertices: IntArray, parts: int) -> list[IntArray]:
    """Contiguous blocks of near-equal vertex count."""
    if vertices.size == 0:
        return []
    return [block for block in np.array_split(vertices, min(parts, vertices.size)) if block.size]


def split_by_edges(vertices: IntArray, arena: GameArena, parts: int) -> list[IntArray]:
    """Contiguous blocks of near-equal successor count."""
    if vertices.size == 0:
        return []
    if parts <= 1:
        return [vertices]
    cumulative = np.cumsum(arena.out_degrees[vertices])
    total = int(cumulative[-1])
    goals = np.arange(1, parts, dtype=np.int64) * total // parts
    cuts = np.unique(np.searchsorted(cumulative, goals, side="right"))
    return [block for block in np.split(vertices, cuts) if block.size]


def partition(vertices: IntArray, arena: GameArena, mapping: AdjacencyMapping, parts: int) -> list[IntArray]:
    """Vertex-balanced blocks for PerVertex, edge-balanced blocks for Chunked."""
    if mapping.kind == MappingKind.CHUNK:
        return split_by_edges(vertices, arena, parts)
    return split_by_vertices(vertices, parts)


def predecessors_of(arena: GameArena, vertices: IntArray) -> IntArray:
    """All CSC sources of `vertices` (with repeats)."""
    if vertices.size == 0:
        return np.empty(0, dtype=np.int64)
    starts = arena.csc_offsets[vertices]
    lengths = arena.csc_offsets[vertices + 1] - starts
    seg_starts = np.zeros(vertices.shape[0], dtype=np.int64)
    np.cumsum(lengths[:-1], out=seg_starts[1:])
    idx = np.arange(int(lengths.sum()), dtype=np.int64) + np.repeat(starts - seg_starts, lengths)
    return arena.csc_sources[idx]


def seed_vertices(arena: GameArena) -> npt.NDArray[np.int64]:
    """Initial worklist: player-0 vertices with only negative out-edges, player-1 with any."""
    negative = arena.csr_weights < 0
    starts = arena.csr_offsets[:-1]
    all_negative = np.logical_and.reduceat(negative, starts)
    any_negative = np.logical_or.reduceat(negative, starts)
    return np.flatnonzero(np.where(arena.is_player0, all_negative, any_negative)).astype(np.int64)
