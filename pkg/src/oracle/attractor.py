"""
=============================================================================
Product Safety-Game Oracle
=============================================================================

Brute-force ground truth for the least energy progress measure, built on
machinery that shares nothing with the lifting solvers.

PRODUCT GAME:
-------------
States are pairs (v, c) with credit c in [0, M_G]. An arena edge
(v, v', w) is available at (v, c) iff c + w >= 0 and then leads to
(v', min(c + w, M_G)).

Bad states:
- player-0 states with no available move
- player-1 states with at least one unavailable move

The player-1 attractor of the bad states is computed backwards with
per-state counters. f(v) is the least credit c with (v, c) outside the
attractor, or TOP if there is none.
=============================================================================
"""

import logging
from collections import deque

import numpy as np

from src.arena.types import GameArena, IntArray
from src.config.settings import get_settings
from src.errors import OracleTooLargeError
from src.measure.progress import TOP_CODE, ProgressMeasure

logger = logging.getLogger(__name__)


def _product_edges(arena: GameArena, credits: int) -> tuple[IntArray, IntArray]:
    """(source state, target state) for every available product move."""
    mg = credits - 1
    weights = arena.csr_weights
    lowest = np.maximum(0, -weights)
    counts = np.maximum(0, mg - lowest + 1)

    edge_of = np.repeat(np.arange(arena.num_edges, dtype=np.int64), counts)
    seg_starts = np.zeros(arena.num_edges, dtype=np.int64)
    np.cumsum(counts[:-1], out=seg_starts[1:])
    credit = lowest[edge_of] + np.arange(edge_of.shape[0], dtype=np.int64) - seg_starts[edge_of]

    next_credit = np.minimum(credit + weights[edge_of], mg)
    sources = arena.csr_sources[edge_of] * credits + credit
    targets = arena.csr_targets[edge_of] * credits + next_credit
    return sources, targets


def min_credit_attractor(arena: GameArena, *, max_states: int | None = None) -> ProgressMeasure:
    """
    Least energy progress measure by explicit product-game solving.

    Raises OracleTooLargeError when |V|·(M_G + 1) exceeds the guard.
    """
    limit = max_states if max_states is not None else get_settings().oracle_max_product_states
    credits = arena.mg + 1
    num_states = arena.num_vertices * credits
    if num_states > limit:
        raise OracleTooLargeError(num_states, limit)

    sources, targets = _product_edges(arena, credits)
    available = np.bincount(sources, minlength=num_states)
    state_owner_p0 = np.repeat(arena.is_player0, credits)
    out_degree = np.repeat(arena.out_degrees, credits)

    bad = np.where(state_owner_p0, available == 0, available < out_degree)
    logger.debug(
        f"[ORACLE] Product game: {num_states} states, {sources.shape[0]} moves, {int(bad.sum())} bad"
    )

    # Reverse adjacency of the product graph
    order = np.argsort(targets, kind="stable")
    rev_sources = sources[order].tolist()
    rev_offsets = np.zeros(num_states + 1, dtype=np.int64)
    np.cumsum(np.bincount(targets, minlength=num_states), out=rev_offsets[1:])
    offsets = rev_offsets.tolist()

    attracted = bad.tolist()
    remaining = available.tolist()
    is_p0 = state_owner_p0.tolist()
    queue = deque(np.flatnonzero(bad).tolist())

    while queue:
        state = queue.popleft()
        for k in range(offsets[state], offsets[state + 1]):
            pred = rev_sources[k]
            if attracted[pred]:
                continue
            if is_p0[pred]:
                remaining[pred] -= 1
                if remaining[pred] > 0:
                    continue
            attracted[pred] = True
            queue.append(pred)

    safe = ~np.asarray(attracted, dtype=np.bool_).reshape(arena.num_vertices, credits)
    least = np.argmax(safe, axis=1).astype(np.int64)
    values = np.where(safe.any(axis=1), least, TOP_CODE)
    return ProgressMeasure._from_encoded(arena, values)
