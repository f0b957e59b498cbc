"""
Solution text format: one line per vertex, ordered by id.

    <id> <value> [<strategy target>]

value is a nonnegative decimal integer or the token T (TOP). The third
column is written for player-0 vertices with a finite value.
"""

from dataclasses import dataclass, field

from src.arena.types import GameArena
from src.errors import ArenaSyntaxError, CountMismatchError
from src.formats.arena_format import parse_int, records
from src.measure.progress import ProgressMeasure
from src.measure.strategy import Strategy
from src.measure.values import TOP, EnergyValue, format_value
from src.solvers.report import SolveReport


@dataclass
class SolutionDocument:
    """Claimed measure plus optional strategy, not yet bound to an arena."""

    values: list[EnergyValue] = field(default_factory=list)
    strategy: dict[int, int] = field(default_factory=dict)

    def measure(self, arena: GameArena) -> ProgressMeasure:
        if len(self.values) != arena.num_vertices:
            raise CountMismatchError(
                f"solution has {len(self.values)} entries, arena has {arena.num_vertices} vertices"
            )
        return ProgressMeasure(arena, self.values)

    def as_strategy(self) -> Strategy:
        return Strategy(self.strategy)


def write_solution(source: SolveReport | ProgressMeasure, strategy: Strategy | None = None) -> str:
    measure = source.measure if isinstance(source, SolveReport) else source
    lines = []
    for v, value in enumerate(measure):
        target = strategy.get(v) if strategy is not None else None
        if target is None:
            lines.append(f"{v} {format_value(value)}\n")
        else:
            lines.append(f"{v} {format_value(value)} {target}\n")
    return "".join(lines)


def parse_solution(text: str) -> SolutionDocument:
    document = SolutionDocument()
    for line, fields in records(text):
        if len(fields) not in (2, 3):
            raise ArenaSyntaxError(line, f"expected 'id value [target]', found {len(fields)} fields")
        vid = parse_int(fields[0], line, "vertex id")
        if vid != len(document.values):
            raise ArenaSyntaxError(line, f"vertex ids must be dense and ordered; expected {len(document.values)}, found {vid}")

        if fields[1] == "T":
            value: EnergyValue = TOP
        else:
            value = parse_int(fields[1], line, "value")
            if value < 0:
                raise ArenaSyntaxError(line, f"value must be nonnegative, found {value}")
        document.values.append(value)

        if len(fields) == 3:
            document.strategy[vid] = parse_int(fields[2], line, "strategy target")
    return document
