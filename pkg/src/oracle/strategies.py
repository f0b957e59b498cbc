"""
Strategy-based oracles: player 0 wins from v under a memoryless strategy
σ0 iff every cycle reachable from v in G(σ0) (player-0 edges restricted
to σ0, player-1 edges kept) is nonnegative.

Negative cycles are found with networkx's Bellman-Ford machinery. Parallel
edges collapse to one weighted edge per (u, v) pair: the maximum weight
for a player-0 choice, the minimum for player-1 edges.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Mapping

import networkx as nx

from src.arena.types import GameArena, Owner
from src.config.settings import get_settings
from src.errors import MalformedStrategyError, OracleTooLargeError
from src.measure.progress import ProgressMeasure, is_epm
from src.measure.strategy import Strategy
from src.oracle.attractor import min_credit_attractor

logger = logging.getLogger(__name__)


def _add_edge(graph: nx.DiGraph, u: int, v: int, weight: int, keep: str) -> None:
    if graph.has_edge(u, v):
        current = graph[u][v]["weight"]
        weight = max(current, weight) if keep == "max" else min(current, weight)
    graph.add_edge(u, v, weight=weight)


def _player1_edges(arena: GameArena, graph: nx.DiGraph, vertices: Iterable[int]) -> None:
    for v in vertices:
        if arena.owners[v] == Owner.PLAYER1:
            for target, weight in arena.successors(v):
                _add_edge(graph, v, target, weight, "min")


def _has_negative_cycle(graph: nx.DiGraph) -> bool:
    if any(data["weight"] < 0 for _, _, data in nx.selfloop_edges(graph, data=True)):
        return True
    return bool(nx.negative_edge_cycle(graph, weight="weight"))


def losing_vertices(graph: nx.DiGraph) -> set[int]:
    """Vertices from which some negative cycle is reachable."""
    losing: set[int] = set()
    for component in nx.strongly_connected_components(graph):
        sub = graph.subgraph(component).copy()
        if sub.number_of_edges() and _has_negative_cycle(sub):
            anchor = next(iter(component))
            losing |= component | nx.ancestors(graph, anchor)
    return losing


def _choice_tuples(arena: GameArena) -> Iterator[dict[int, tuple[int, int]]]:
    """Every memoryless player-0 strategy, as vertex -> (target, weight) per CSR edge."""
    player0 = [v for v in range(arena.num_vertices) if arena.owners[v] == Owner.PLAYER0]
    options = [list(arena.successors(v)) for v in player0]

    indices = [0] * len(player0)
    while True:
        yield {v: options[i][indices[i]] for i, v in enumerate(player0)}
        # Odometer increment
        position = 0
        while position < len(indices):
            indices[position] += 1
            if indices[position] < len(options[position]):
                break
            indices[position] = 0
            position += 1
        else:
            return


def winning_set_by_strategy_enum(arena: GameArena, *, max_strategies: int | None = None) -> frozenset[int]:
    """
    W0 by exhaustive enumeration of player-0 memoryless strategies.

    Raises OracleTooLargeError when the product of player-0 out-degrees
    exceeds the guard.
    """
    limit = max_strategies if max_strategies is not None else get_settings().oracle_max_strategies
    total = math.prod(int(arena.out_degrees[v]) for v in range(arena.num_vertices) if arena.is_player0[v])
    if total > limit:
        raise OracleTooLargeError(total, limit, what="strategies")

    base = nx.DiGraph()
    base.add_nodes_from(range(arena.num_vertices))
    _player1_edges(arena, base, range(arena.num_vertices))

    winning: set[int] = set()
    for choice in _choice_tuples(arena):
        graph = base.copy()
        for v, (target, weight) in choice.items():
            graph.add_edge(v, target, weight=weight)
        winning |= set(graph.nodes) - losing_vertices(graph)
        if len(winning) == arena.num_vertices:
            break

    logger.debug(f"[ORACLE] Strategy enumeration over {total} strategies: |W0|={len(winning)}")
    return frozenset(winning)


def strategy_counterexample(
    arena: GameArena,
    strategy: Strategy | Mapping[int, int],
    claimed_w0: Iterable[int],
) -> int | None:
    """
    Smallest vertex of claimed_w0 from which G(σ0) reaches a negative
    cycle, or None if there is none.

    Raises MalformedStrategyError when a reachable player-0 vertex has no
    choice or its choice is not a successor.
    """
    choice = strategy.choice if isinstance(strategy, Strategy) else strategy
    graph = nx.DiGraph()
    claimed = list(dict.fromkeys(claimed_w0))
    frontier = list(claimed)
    seen = set(frontier)

    while frontier:
        v = frontier.pop()
        graph.add_node(v)
        if arena.owners[v] == Owner.PLAYER0:
            if v not in choice:
                raise MalformedStrategyError(v, "no choice for reachable player-0 vertex")
            target = choice[v]
            weights = [w for t, w in arena.successors(v) if t == target]
            if not weights:
                raise MalformedStrategyError(v)
            _add_edge(graph, v, target, max(weights), "max")
            successors = [target]
        else:
            _player1_edges(arena, graph, [v])
            successors = [t for t, _ in arena.successors(v)]

        for t in successors:
            if t not in seen:
                seen.add(t)
                frontier.append(t)

    if graph.number_of_edges() == 0 or not _has_negative_cycle(graph):
        return None
    losing = losing_vertices(graph)
    return min((v for v in claimed if v in losing), default=None)


def verify_strategy(
    arena: GameArena,
    strategy: Strategy | Mapping[int, int],
    claimed_w0: Iterable[int],
) -> bool:
    """
    True iff no negative cycle of G(σ0) is reachable from claimed_w0.

    Raises MalformedStrategyError when a reachable player-0 vertex has no
    choice or its choice is not a successor.
    """
    return strategy_counterexample(arena, strategy, claimed_w0) is None


def verify_measure(arena: GameArena, f: ProgressMeasure, *, max_states: int | None = None) -> bool:
    """True iff f is an EPM and equals the product-game oracle's measure."""
    return is_epm(f, arena) and f == min_credit_attractor(arena, max_states=max_states)
