"""
=============================================================================
Deterministic Arena Generators
=============================================================================

All randomness comes from one XorShift64Star stream seeded by the spec,
consumed in a fixed order: owners first (one draw per vertex), then
edges in emission order. The same GenSpec therefore produces the same
arena bytes on every platform.

FAMILIES:
---------
- random: one forced edge per vertex, then round(n·d) - n extra edges
  with uniform sources, targets and weights.
- cyclechain: rings of length max(2, round(d) + 1) with alternately
  negative and nonnegative weights; the last vertex of each ring also
  points to the first vertex of the next ring. Slow to converge.
- clique: all n² ordered pairs, self-loops included, row-major.
=============================================================================
"""

import logging
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.arena.builder import build_arena_from_arrays
from src.arena.types import GameArena, Owner
from src.errors import InvalidSpecError
from src.formats.prng import MASK64, XorShift64Star

logger = logging.getLogger(__name__)


class Family(StrEnum):
    RANDOM = "random"
    CYCLECHAIN = "cyclechain"
    CLIQUE = "clique"


class GenSpec(BaseModel):
    """Generator parameters."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    d: float = Field(default=2.0, ge=1.0)
    wmin: int = -5
    wmax: int = 5
    p0_frac: float = Field(default=0.5, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, le=MASK64)
    family: Family = Family.RANDOM

    @model_validator(mode="after")
    def _check_range(self) -> "GenSpec":
        if self.wmin > self.wmax:
            raise InvalidSpecError(f"wmin {self.wmin} > wmax {self.wmax}")
        return self


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _owners(spec: GenSpec, rng: XorShift64Star) -> list[int]:
    threshold = math.floor(spec.p0_frac * 2**64)
    return [Owner.PLAYER0 if rng.next_u64() < threshold else Owner.PLAYER1 for _ in range(spec.n)]


def _random_edges(spec: GenSpec, rng: XorShift64Star) -> list[tuple[int, int, int]]:
    n = spec.n
    edges = [(v, rng.below(n), rng.between(spec.wmin, spec.wmax)) for v in range(n)]
    extra = max(0, _round_half_up(n * spec.d) - n)
    for _ in range(extra):
        src = rng.below(n)
        edges.append((src, rng.below(n), rng.between(spec.wmin, spec.wmax)))
    return edges


def _ring_range(spec: GenSpec, negative: bool) -> tuple[int, int]:
    low, high = (spec.wmin, -1) if negative else (0, spec.wmax)
    if low > high:
        return spec.wmin, spec.wmax
    return low, high


def _cyclechain_edges(spec: GenSpec, rng: XorShift64Star) -> list[tuple[int, int, int]]:
    n = spec.n
    ring_length = max(2, _round_half_up(spec.d) + 1)
    edges: list[tuple[int, int, int]] = []
    for ring, start in enumerate(range(0, n, ring_length)):
        end = min(n, start + ring_length)
        low, high = _ring_range(spec, negative=ring % 2 == 0)
        for v in range(start, end):
            successor = v + 1 if v + 1 < end else start
            edges.append((v, successor, rng.between(low, high)))
        if end < n:
            edges.append((end - 1, end, rng.between(spec.wmin, spec.wmax)))
    return edges


def _clique_edges(spec: GenSpec, rng: XorShift64Star) -> list[tuple[int, int, int]]:
    return [(u, v, rng.between(spec.wmin, spec.wmax)) for u in range(spec.n) for v in range(spec.n)]


GENERATORS = {
    Family.RANDOM: _random_edges,
    Family.CYCLECHAIN: _cyclechain_edges,
    Family.CLIQUE: _clique_edges,
}


def generate(spec: GenSpec, *, max_abs_weight: int | None = None) -> GameArena:
    """Build the arena described by `spec`; deterministic in `spec`."""
    rng = XorShift64Star(spec.seed)
    owners = _owners(spec, rng)
    edges = GENERATORS[spec.family](spec, rng)

    src = [u for u, _, _ in edges]
    dst = [v for _, v, _ in edges]
    weights = [w for _, _, w in edges]
    arena = build_arena_from_arrays(src, dst, weights, owners, max_abs_weight=max_abs_weight)
    logger.info(
        f"[GEN] Generated {spec.family} arena: |V|={arena.num_vertices} |E|={arena.num_edges} "
        f"M_G={arena.mg} seed={spec.seed}"
    )
    return arena
