"""
Memoryless player-0 strategies extracted from a least progress measure.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from src.arena.types import GameArena, Owner
from src.errors import NoWitnessError
from src.measure.progress import ProgressMeasure
from src.measure.values import TOP, ominus, precedes


@dataclass(frozen=True)
class Strategy:
    """choice(v) for every player-0 vertex with a finite measure."""

    choice: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "choice", MappingProxyType(dict(self.choice)))

    def __contains__(self, v: object) -> bool:
        return v in self.choice

    def get(self, v: int) -> int | None:
        return self.choice.get(v)


def extract_strategy(f: ProgressMeasure, arena: GameArena) -> Strategy:
    """
    Pick, for each finite player-0 vertex, the first successor in CSR order
    with f(v) ⪰ f(v') ⊖ w(v, v').

    Raises NoWitnessError if some finite player-0 vertex has no such
    successor, which means f is not an EPM.
    """
    if not f.is_bound_to(arena):
        raise ValueError("progress measure is not bound to this arena")

    choice: dict[int, int] = {}
    for v in range(arena.num_vertices):
        if arena.owners[v] != Owner.PLAYER0:
            continue
        value = f[v]
        if value is TOP:
            continue
        for target, weight in arena.successors(v):
            if precedes(ominus(f[target], weight), value):
                choice[v] = target
                break
        else:
            raise NoWitnessError(v)
    return Strategy(choice)
