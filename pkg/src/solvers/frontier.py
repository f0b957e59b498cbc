"""
Frontier sets for the round-based parallel solver.

`current` is the set lifted this round; `next` collects predecessors of
changed vertices. Insertion into `next` is a batched test-and-set on the
`in_next` flag vector under a lock, so a vertex is inserted at most once
per round no matter how many workers notify it.
"""

import threading

import numpy as np
import numpy.typing as npt

from src.arena.types import IntArray


class Frontier:
    def __init__(self, num_vertices: int, initial: IntArray):
        self.current: IntArray = np.asarray(initial, dtype=np.int64)
        self.in_next: npt.NDArray[np.bool_] = np.zeros(num_vertices, dtype=np.bool_)
        self._parts: list[IntArray] = []
        self._lock = threading.Lock()
        self.notifications = 0

    def __len__(self) -> int:
        return int(self.current.shape[0])

    def __bool__(self) -> bool:
        return self.current.shape[0] > 0

    def insert(self, vertices: IntArray) -> int:
        """Add `vertices` to next, skipping any already flagged. Returns how many were new."""
        if vertices.size == 0:
            return 0
        batch = np.unique(vertices)
        with self._lock:
            self.notifications += int(vertices.size)
            fresh = batch[~self.in_next[batch]]
            self.in_next[fresh] = True
            if fresh.size:
                self._parts.append(fresh)
        return int(fresh.size)

    def advance(self) -> None:
        """Make next the current frontier (sorted) and clear the flags."""
        if self._parts:
            upcoming = np.sort(np.concatenate(self._parts))
        else:
            upcoming = np.empty(0, dtype=np.int64)
        self.in_next[upcoming] = False
        self._parts = []
        self.current = upcoming
