"""
=============================================================================
Progress Measures and the Lifting Operator
=============================================================================

A ProgressMeasure is a dense per-vertex map V -> EnergyValue bound to the
arena it was computed for (by content fingerprint).

STORAGE:
--------
Values live in a read-only int64 vector where TOP is stored as -1. The
sentinel never leaks: indexing and iteration return the TOP singleton.
Solver outputs always satisfy "finite <= M_G"; measures parsed from a
solution document may claim larger finite values (they are then simply
not the least measure), so that bound is checked by within_bounds(), not
by the constructor.
=============================================================================
"""

from collections.abc import Iterable, Iterator, Sequence

import numpy as np
import numpy.typing as npt

from src.arena.types import GameArena, IntArray, Owner
from src.errors import ArithmeticOverflowError
from src.measure.values import (
    INT64_MAX,
    TOP,
    EnergyValue,
    cap,
    format_value,
    ominus,
    sort_key,
)

TOP_CODE = -1


class ProgressMeasure:
    """Per-vertex energy values for one arena."""

    __slots__ = ("_data", "arena_id", "mg")

    def __init__(self, arena: GameArena, values: Iterable[EnergyValue]):
        raw = list(values)
        if len(raw) != arena.num_vertices:
            raise ValueError(f"measure has {len(raw)} entries, arena has {arena.num_vertices}")
        # Checked before encoding: -1 is the TOP storage code
        if any(v is not TOP and int(v) < 0 for v in raw):
            raise ValueError("finite energy values must be nonnegative")
        encoded = [TOP_CODE if v is TOP else int(v) for v in raw]

        # Keeps f(v') - w(v, v') representable for every edge
        limit = INT64_MAX - arena.stats.w_max - 1
        if any(v > limit for v in encoded):
            raise ArithmeticOverflowError(f"claimed value exceeds {limit}")

        data = np.asarray(encoded, dtype=np.int64)
        data.setflags(write=False)
        self._data = data
        self.arena_id = arena.fingerprint
        self.mg = arena.mg

    @classmethod
    def zeros(cls, arena: GameArena) -> "ProgressMeasure":
        return cls._from_encoded(arena, np.zeros(arena.num_vertices, dtype=np.int64))

    @classmethod
    def _from_encoded(cls, arena: GameArena, data: IntArray) -> "ProgressMeasure":
        measure = cls.__new__(cls)
        frozen = np.array(data, dtype=np.int64, copy=True)
        frozen.setflags(write=False)
        measure._data = frozen
        measure.arena_id = arena.fingerprint
        measure.mg = arena.mg
        return measure

    @classmethod
    def from_work(cls, arena: GameArena, work: IntArray) -> "ProgressMeasure":
        """Convert a solver work vector (TOP stored as M_G + 1) into a measure."""
        return cls._from_encoded(arena, np.where(work > arena.mg, TOP_CODE, work))

    def to_work(self) -> IntArray:
        """Solver work vector: a writable copy with TOP stored as M_G + 1."""
        return np.where(self._data == TOP_CODE, self.mg + 1, self._data).astype(np.int64)

    @property
    def encoded(self) -> IntArray:
        """Read-only storage vector (TOP as -1); for vectorised checks."""
        return self._data

    def __len__(self) -> int:
        return int(self._data.shape[0])

    def __getitem__(self, v: int) -> EnergyValue:
        raw = int(self._data[v])
        return TOP if raw == TOP_CODE else raw

    def __iter__(self) -> Iterator[EnergyValue]:
        for raw in self._data.tolist():
            yield TOP if raw == TOP_CODE else raw

    @property
    def values(self) -> tuple[EnergyValue, ...]:
        return tuple(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProgressMeasure):
            return NotImplemented
        return self.arena_id == other.arena_id and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.arena_id, self._data.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join(format_value(v) for v in list(self)[:16])
        suffix = ", ..." if len(self) > 16 else ""
        return f"ProgressMeasure([{shown}{suffix}])"

    def is_bound_to(self, arena: GameArena) -> bool:
        return self.arena_id == arena.fingerprint

    def within_bounds(self) -> bool:
        """Every finite entry <= M_G."""
        return bool(np.all(self._data <= self.mg))

    def leq(self, other: "ProgressMeasure") -> bool:
        """Pointwise ⊑."""
        mine = np.where(self._data == TOP_CODE, np.iinfo(np.int64).max, self._data)
        theirs = np.where(other._data == TOP_CODE, np.iinfo(np.int64).max, other._data)
        return bool(np.all(mine <= theirs))

    def replace(self, arena: GameArena, v: int, value: EnergyValue) -> "ProgressMeasure":
        values = list(self)
        values[v] = value
        return ProgressMeasure(arena, values)


def _require_bound(f: ProgressMeasure, arena: GameArena) -> None:
    if not f.is_bound_to(arena):
        raise ValueError("progress measure is not bound to this arena")


def lift(f: ProgressMeasure, v: int, arena: GameArena) -> EnergyValue:
    """
    Evaluate δ(f, v) at v.

    min (player 0) or max (player 1) over successors of f(v') ⊖ w(v, v'),
    capped to TOP above M_G. The result may be below f(v); solvers only
    apply it where the EPM condition at v is violated, or take the ⪯-max.
    """
    _require_bound(f, arena)
    candidates = [ominus(f[target], weight) for target, weight in arena.successors(v)]
    pick = min if arena.owner(v) == Owner.PLAYER0 else max
    return cap(pick(candidates, key=sort_key), arena.mg)


def satisfied_edges(f: ProgressMeasure, arena: GameArena) -> npt.NDArray[np.bool_]:
    """Per CSR edge (u, v, w): f(u) ⪰ f(v) ⊖ w; a need above M_G is TOP."""
    data = f.encoded
    source_vals = data[arena.csr_sources]
    target_vals = data[arena.csr_targets]
    needed = np.maximum(0, target_vals - arena.csr_weights)
    needs_top = (target_vals == TOP_CODE) | (needed > f.mg)
    return (source_vals == TOP_CODE) | (~needs_top & (source_vals >= needed))


def violations(f: ProgressMeasure, arena: GameArena) -> IntArray:
    """Vertices whose local EPM condition fails, ascending."""
    _require_bound(f, arena)
    ok = satisfied_edges(f, arena)
    starts = arena.csr_offsets[:-1]
    some_ok = np.logical_or.reduceat(ok, starts)
    all_ok = np.logical_and.reduceat(ok, starts)
    local_ok = np.where(arena.is_player0, some_ok, all_ok)
    return np.flatnonzero(~local_ok).astype(np.int64)


def is_epm(f: ProgressMeasure, arena: GameArena) -> bool:
    """Existential condition on V0, universal on V1, for every vertex."""
    return violations(f, arena).size == 0


def winning_set(f: ProgressMeasure) -> tuple[frozenset[int], frozenset[int]]:
    """(W0, W1) read off the least measure: W1 is exactly the TOP vertices."""
    top_mask = f.encoded == TOP_CODE
    w0 = frozenset(np.flatnonzero(~top_mask).tolist())
    w1 = frozenset(np.flatnonzero(top_mask).tolist())
    return w0, w1


def map_back(f: ProgressMeasure, perm: Sequence[int] | IntArray, original: GameArena) -> ProgressMeasure:
    """
    Pull a measure computed on reorder_by_owner(original) back to original ids.

    perm maps old-id -> new-id, so f_original(v) = f_reordered(perm[v]).
    """
    perm_arr = np.asarray(perm, dtype=np.int64)
    return ProgressMeasure._from_encoded(original, f.encoded[perm_arr])
