"""
=============================================================================
Arena Types
=============================================================================

Immutable game arena in dual compressed-adjacency form.

LAYOUT:
-------
- CSR (csr_offsets / csr_targets / csr_weights): successors of v live in
  csr_targets[csr_offsets[v]:csr_offsets[v + 1]], in input order.
- CSC (csc_offsets / csc_sources / csc_weights): predecessors of v live in
  csc_sources[csc_offsets[v]:csc_offsets[v + 1]], produced by a stable
  transpose of the CSR arrays.

All arrays are int64 (owners int8) and marked read-only, so one arena can
be shared by any number of solver threads without copying.
=============================================================================
"""

import hashlib
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property

import numpy as np
import numpy.typing as npt

IntArray = npt.NDArray[np.int64]

INT64_MAX = 2**63 - 1


class Owner(IntEnum):
    """Which player moves at a vertex."""

    PLAYER0 = 0
    PLAYER1 = 1


@dataclass(frozen=True)
class ArenaStats:
    """Cached arena characteristics (the columns of a dataset table)."""

    mg: int  # sum over v of max({0} | {-w(v, v')})
    w_max: int  # max |w|
    max_out_degree: int
    avg_out_degree: float
    num_player0: int


@dataclass(frozen=True, eq=False)
class GameArena:
    """
    Total weighted game graph with owner tags.

    Build instances with src.arena.builder.build_arena; the constructor
    itself performs no validation.
    """

    num_vertices: int
    num_edges: int
    owners: npt.NDArray[np.int8]
    csr_offsets: IntArray
    csr_targets: IntArray
    csr_weights: IntArray
    csc_offsets: IntArray
    csc_sources: IntArray
    csc_weights: IntArray
    stats: ArenaStats = field(repr=False)

    @property
    def mg(self) -> int:
        return self.stats.mg

    @cached_property
    def fingerprint(self) -> str:
        """Content hash binding progress measures to the arena they were computed for."""
        digest = hashlib.sha256()
        for array in (self.owners, self.csr_offsets, self.csr_targets, self.csr_weights):
            digest.update(np.ascontiguousarray(array).tobytes())
        return digest.hexdigest()[:16]

    @cached_property
    def csr_sources(self) -> IntArray:
        """Source vertex of every CSR edge (the row index expanded)."""
        degrees = np.diff(self.csr_offsets)
        sources = np.repeat(np.arange(self.num_vertices, dtype=np.int64), degrees)
        sources.setflags(write=False)
        return sources

    @cached_property
    def out_degrees(self) -> IntArray:
        degrees = np.diff(self.csr_offsets)
        degrees.setflags(write=False)
        return degrees

    @cached_property
    def is_player0(self) -> npt.NDArray[np.bool_]:
        mask = self.owners == Owner.PLAYER0
        mask.setflags(write=False)
        return mask

    @cached_property
    def lists(self) -> "AdjacencyLists":
        """Plain Python list copies of the adjacency, for scalar hot loops."""
        return AdjacencyLists(
            owners=self.owners.tolist(),
            csr_offsets=self.csr_offsets.tolist(),
            csr_targets=self.csr_targets.tolist(),
            csr_weights=self.csr_weights.tolist(),
            csc_offsets=self.csc_offsets.tolist(),
            csc_sources=self.csc_sources.tolist(),
            csc_weights=self.csc_weights.tolist(),
        )

    def owner(self, v: int) -> Owner:
        self._check_vertex(v)
        return Owner(int(self.owners[v]))

    def successors(self, v: int) -> Iterator[tuple[int, int]]:
        """Yield (target, weight) pairs from the CSR row of v."""
        self._check_vertex(v)
        adj = self.lists
        start, end = adj.csr_offsets[v], adj.csr_offsets[v + 1]
        return zip(adj.csr_targets[start:end], adj.csr_weights[start:end], strict=True)

    def predecessors(self, v: int) -> Iterator[tuple[int, int]]:
        """Yield (source, weight) pairs from the CSC column of v."""
        self._check_vertex(v)
        adj = self.lists
        start, end = adj.csc_offsets[v], adj.csc_offsets[v + 1]
        return zip(adj.csc_sources[start:end], adj.csc_weights[start:end], strict=True)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (src, dst, weight) in CSR order."""
        adj = self.lists
        for v in range(self.num_vertices):
            for k in range(adj.csr_offsets[v], adj.csr_offsets[v + 1]):
                yield v, adj.csr_targets[k], adj.csr_weights[k]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise IndexError(f"vertex {v} out of range [0, {self.num_vertices})")


@dataclass(frozen=True)
class AdjacencyLists:
    """List mirror of the arena arrays (indexing Python lists beats numpy scalars)."""

    owners: list[int]
    csr_offsets: list[int]
    csr_targets: list[int]
    csr_weights: list[int]
    csc_offsets: list[int]
    csc_sources: list[int]
    csc_weights: list[int]
