"""
=============================================================================
Benchmark Harness
=============================================================================

Runs every (instance × variant × workers × mapping) cell and collects one
BenchRow per cell.

CONVENTIONS:
------------
- seq ignores the workers/mapping matrix and yields a single row.
- A cell that exceeds the timeout gets timeout=True, wall_time equal to
  the budget, and no lifts/rounds.
- Failures (unreadable file, invalid arena, ...) are recorded in the
  row's `error` column; they never abort the run.
- Rows are sorted by (instance, variant, workers, mapping).

CSV columns follow BENCH_COLUMNS; JSON output is a list of the same
records.
=============================================================================
"""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from src.arena.types import GameArena
from src.errors import EnergyGameError, SolveTimeoutError
from src.formats.arena_format import parse_arena
from src.solvers.dispatch import solve
from src.solvers.parallel import ParallelConfig
from src.solvers.report import MappingKind, Variant

logger = logging.getLogger(__name__)


class BenchRow(BaseModel):
    """One cell of the benchmark table."""

    instance: str
    vertices: int
    edges: int
    avg_degree: float
    variant: str
    mapping: str
    workers: int
    wall_time: float
    lifts: int | None = None
    rounds: int | None = None
    timeout: bool = False
    error: str | None = None


BENCH_COLUMNS = list(BenchRow.model_fields)


def expand_instances(paths: Iterable[str | Path]) -> list[Path]:
    """Files as given; directories contribute their *.eg files in name order."""
    found: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            found.extend(sorted(path.glob("*.eg")))
        else:
            found.append(path)
    return found


def _cells(
    variants: Sequence[Variant], workers: Sequence[int], mappings: Sequence[MappingKind], chunk_size: int | None
) -> list[tuple[Variant, ParallelConfig]]:
    cells: list[tuple[Variant, ParallelConfig]] = []
    for variant in variants:
        if variant == Variant.SEQ:
            cells.append((variant, ParallelConfig()))
            continue
        for count in workers:
            for mapping in mappings:
                chunk = chunk_size if mapping == MappingKind.CHUNK else None
                cells.append((variant, ParallelConfig(workers=count, mapping=mapping, chunk_size=chunk)))
    return cells


def _run_cell(name: str, arena: GameArena, variant: Variant, config: ParallelConfig, timeout: float) -> BenchRow:
    mapping = config.resolve_mapping(arena)
    base = {
        "instance": name,
        "vertices": arena.num_vertices,
        "edges": arena.num_edges,
        "avg_degree": round(arena.stats.avg_out_degree, 2),
        "variant": str(variant),
        "mapping": mapping.label,
        "workers": config.workers,
    }
    try:
        report = solve(arena, variant, config, timeout=timeout)
    except SolveTimeoutError:
        logger.warning(f"[BENCH] {name} {variant}/{mapping.label}/{config.workers}: timeout after {timeout}s")
        return BenchRow(**base, wall_time=timeout, timeout=True)
    except EnergyGameError as e:
        logger.error(f"[BENCH] {name} {variant}/{mapping.label}/{config.workers}: {e}")
        return BenchRow(**base, wall_time=0.0, error=str(e))
    return BenchRow(**base, wall_time=report.wall_time, lifts=report.lifts, rounds=report.rounds)


def run_bench(
    instances: Sequence[Path],
    variants: Sequence[Variant],
    workers: Sequence[int],
    mappings: Sequence[MappingKind],
    *,
    timeout: float,
    chunk_size: int | None = None,
) -> list[BenchRow]:
    cells = _cells(variants, workers, mappings, chunk_size)
    rows: list[BenchRow] = []

    for path in instances:
        name = path.name
        try:
            arena = parse_arena(path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, EnergyGameError) as e:
            logger.error(f"[BENCH] Skipping {path}: {e}")
            for variant, config in cells:
                label = "vertex" if config.mapping == MappingKind.VERTEX else "chunk"
                rows.append(
                    BenchRow(
                        instance=name,
                        vertices=0,
                        edges=0,
                        avg_degree=0.0,
                        variant=str(variant),
                        mapping=label,
                        workers=config.workers,
                        wall_time=0.0,
                        error=str(e),
                    )
                )
            continue

        logger.info(f"[BENCH] {name}: |V|={arena.num_vertices} |E|={arena.num_edges}, {len(cells)} cells")
        rows.extend(_run_cell(name, arena, variant, config, timeout) for variant, config in cells)

    rows.sort(key=lambda r: (r.instance, r.variant, r.workers, r.mapping))
    return rows


def write_csv(rows: Sequence[BenchRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        for row in rows:
            record = row.model_dump()
            record["wall_time"] = f"{row.wall_time:.3f}"
            writer.writerow(record)


def write_json(rows: Sequence[BenchRow], path: str | Path) -> None:
    Path(path).write_text(json.dumps([row.model_dump() for row in rows], indent=2) + "\n", encoding="utf-8")


def render_table(rows: Sequence[BenchRow], console: Console) -> None:
    table = Table(title="Benchmark Results", show_header=True)
    for column in ("instance", "|V|", "|E|", "deg", "variant", "mapping", "workers", "time (s)", "lifts", "rounds"):
        table.add_column(column, justify="left" if column in ("instance", "variant", "mapping") else "right")

    for row in rows:
        if row.error:
            time_cell = "[red]error[/red]"
        elif row.timeout:
            time_cell = f"[yellow]{row.wall_time:.3f}[/yellow]"
        else:
            time_cell = f"{row.wall_time:.3f}"
        table.add_row(
            row.instance,
            str(row.vertices),
            str(row.edges),
            f"{row.avg_degree:.2f}",
            row.variant,
            row.mapping,
            str(row.workers),
            time_cell,
            "-" if row.lifts is None else str(row.lifts),
            "-" if row.rounds is None else str(row.rounds),
        )
    console.print(table)
