"""
=============================================================================
Command-Line Interface
=============================================================================

USAGE:
------
egsolve solve  <arena> [--mode seq|sweep|frontier] [--workers N]
               [--mapping vertex|chunk] [--chunk-size H] [--timeout S]
               [--order fifo|lifo] [--reorder] [--out FILE]
egsolve verify <arena> <solution> [--oracle]
egsolve gen    --n N [--d D] [--wmin A] [--wmax B] [--p0 P] [--seed S]
               [--family random|cyclechain|clique] [--out FILE]
egsolve bench  <arena-or-dir>... [--modes ...] [--workers 1,2,4]
               [--mappings vertex,chunk] [--timeout S] [--csv F] [--json F]
egsolve info   <arena>

EXIT CODES:
-----------
0 success, 1 input error, 2 timeout, 3 refuted, 4 oracle too large

Solution and arena documents go to stdout (or --out); summaries and
logs go to stderr.
=============================================================================
"""

import argparse
import logging
import sys
from collections.abc import Callable
from enum import IntEnum
from pathlib import Path

from rich.console import Console
from rich.table import Table

from src.arena.types import GameArena
from src.cli.bench import expand_instances, render_table, run_bench, write_csv, write_json
from src.config.settings import get_settings
from src.errors import (
    EnergyGameError,
    InputFileError,
    MalformedStrategyError,
    OracleTooLargeError,
    SolveTimeoutError,
)
from src.formats.arena_format import parse_arena, write_arena
from src.formats.generator import Family, GenSpec, generate
from src.formats.solution_format import parse_solution, write_solution
from src.measure.progress import violations
from src.measure.strategy import extract_strategy
from src.measure.values import TOP, format_value
from src.oracle.attractor import min_credit_attractor
from src.oracle.strategies import strategy_counterexample
from src.solvers.dispatch import solve
from src.solvers.kernels import choose_chunk_size
from src.solvers.parallel import ParallelConfig
from src.solvers.report import MappingKind, Variant
from src.telemetry.prometheus import export_metrics

logger = logging.getLogger(__name__)

console = Console(stderr=True)


class ExitCode(IntEnum):
    OK = 0
    INPUT_ERROR = 1
    TIMEOUT = 2
    REFUTED = 3
    TOO_LARGE = 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise InputFileError(path, f"not UTF-8 text: {e.reason}") from e


def _load_arena(path: str) -> GameArena:
    return parse_arena(_read(path))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text, encoding="utf-8")


def _csv_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


# =============================================================================
# Subcommands
# =============================================================================


def cmd_solve(args: argparse.Namespace) -> int:
    arena = _load_arena(args.arena)
    config = ParallelConfig(workers=args.workers, mapping=args.mapping, chunk_size=args.chunk_size)
    report = solve(
        arena,
        args.mode,
        config,
        timeout=args.timeout,
        order=args.order,
        reorder=args.reorder,
    )
    strategy = extract_strategy(report.measure, arena)
    _emit(write_solution(report, strategy), args.out)
    console.print(
        f"{report.variant} mapping={report.mapping.label} workers={report.workers} "
        f"lifts={report.lifts} time={report.wall_time:.3f}s"
    )
    return ExitCode.OK


def _refute(message: str) -> int:
    console.print(f"[red]refuted[/red]: {message}")
    return ExitCode.REFUTED


def cmd_verify(args: argparse.Namespace) -> int:
    arena = _load_arena(args.arena)
    document = parse_solution(_read(args.solution))
    claimed = document.measure(arena)

    # Finite claims live in [0, M_G]
    if not claimed.within_bounds():
        v = next(v for v in range(arena.num_vertices) if claimed[v] is not TOP and claimed[v] > arena.mg)
        return _refute(f"vertex {v} claims {claimed[v]}, above M_G = {arena.mg}")

    violated = violations(claimed, arena)
    if violated.size:
        return _refute(f"vertex {int(violated[0])} violates its progress-measure condition")

    w0 = [v for v in range(arena.num_vertices) if claimed[v] is not TOP]
    if document.strategy:
        try:
            bad = strategy_counterexample(arena, document.as_strategy(), w0)
        except MalformedStrategyError as e:
            return _refute(str(e))
        if bad is not None:
            return _refute(f"vertex {bad} reaches a negative cycle under the supplied strategy")

    if args.oracle:
        least = min_credit_attractor(arena)
        if claimed != least:
            v = next(v for v in range(arena.num_vertices) if claimed[v] != least[v])
            return _refute(
                f"vertex {v} claims {format_value(claimed[v])}, least credit is {format_value(least[v])}"
            )
        bad = strategy_counterexample(arena, extract_strategy(least, arena), w0)
        if bad is not None:
            return _refute(f"vertex {bad} reaches a negative cycle under the extracted strategy")

    console.print("[green]ok[/green]: solution is a valid energy progress measure")
    return ExitCode.OK


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        n=args.n,
        d=args.d,
        wmin=args.wmin,
        wmax=args.wmax,
        p0_frac=args.p0,
        seed=args.seed,
        family=args.family,
    )
    arena = generate(spec)
    _emit(write_arena(arena), args.out)
    return ExitCode.OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = run_bench(
        expand_instances(args.instances),
        [Variant(mode) for mode in _csv_list(args.modes)],
        [int(count) for count in _csv_list(args.workers)],
        [MappingKind(kind) for kind in _csv_list(args.mappings)],
        timeout=args.timeout,
        chunk_size=args.chunk_size,
    )
    if args.csv:
        write_csv(rows, args.csv)
    if args.json:
        write_json(rows, args.json)
    render_table(rows, console)
    return ExitCode.OK


def cmd_info(args: argparse.Namespace) -> int:
    arena = _load_arena(args.arena)
    stats = arena.stats
    table = Table(title=Path(args.arena).name, show_header=True)
    table.add_column("Property")
    table.add_column("Value", justify="right")
    table.add_row("vertices", str(arena.num_vertices))
    table.add_row("edges", str(arena.num_edges))
    table.add_row("avg out-degree", f"{stats.avg_out_degree:.2f}")
    table.add_row("max out-degree", str(stats.max_out_degree))
    table.add_row("player-0 vertices", str(stats.num_player0))
    table.add_row("M_G", str(stats.mg))
    table.add_row("W_max", str(stats.w_max))
    table.add_row("chunk size", str(choose_chunk_size(arena)))
    Console().print(table)
    return ExitCode.OK


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="egsolve", description="Minimum initial credit solver for energy games")
    parser.add_argument("--metrics-file", default=settings.metrics_file, help="Write Prometheus metrics here")
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser("solve", help="Compute the least energy progress measure")
    solve_p.add_argument("arena")
    solve_p.add_argument("--mode", choices=[v.value for v in Variant], default=Variant.SEQ.value)
    solve_p.add_argument("--workers", type=int, default=settings.default_workers)
    solve_p.add_argument("--mapping", choices=[m.value for m in MappingKind], default=MappingKind.VERTEX.value)
    solve_p.add_argument("--chunk-size", type=int, default=None, help="Lanes per vertex (power of two)")
    solve_p.add_argument("--timeout", type=float, default=settings.default_timeout)
    solve_p.add_argument("--order", choices=["fifo", "lifo"], default=None, help="Worklist order for seq")
    solve_p.add_argument("--reorder", action="store_true", help="Solve with player-0 vertices numbered first")
    solve_p.add_argument("--out", default=None)
    solve_p.set_defaults(handler=cmd_solve)

    verify_p = sub.add_parser("verify", help="Check a solution document")
    verify_p.add_argument("arena")
    verify_p.add_argument("solution")
    verify_p.add_argument("--oracle", action="store_true", help="Also compare with the brute-force oracle")
    verify_p.set_defaults(handler=cmd_verify)

    gen_p = sub.add_parser("gen", help="Generate a deterministic arena")
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--d", type=float, default=2.0)
    gen_p.add_argument("--wmin", type=int, default=-5)
    gen_p.add_argument("--wmax", type=int, default=5)
    gen_p.add_argument("--p0", type=float, default=0.5)
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--family", choices=[f.value for f in Family], default=Family.RANDOM.value)
    gen_p.add_argument("--out", default=None)
    gen_p.set_defaults(handler=cmd_gen)

    bench_p = sub.add_parser("bench", help="Run a benchmark matrix")
    bench_p.add_argument("instances", nargs="+")
    bench_p.add_argument("--modes", default="seq,sweep,frontier")
    bench_p.add_argument("--workers", default="1")
    bench_p.add_argument("--mappings", default="vertex")
    bench_p.add_argument("--chunk-size", type=int, default=None)
    bench_p.add_argument("--timeout", type=float, default=settings.default_timeout)
    bench_p.add_argument("--csv", default=None)
    bench_p.add_argument("--json", default=None)
    bench_p.set_defaults(handler=cmd_bench)

    info_p = sub.add_parser("info", help="Print arena characteristics")
    info_p.add_argument("arena")
    info_p.set_defaults(handler=cmd_info)

    return parser


def run_command(args: argparse.Namespace) -> int:
    """Dispatch to the subcommand and map failures to exit codes."""
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        code = int(handler(args))
    except SolveTimeoutError as e:
        logger.error(f"[CLI] {e}")
        code = ExitCode.TIMEOUT
    except OracleTooLargeError as e:
        logger.error(f"[CLI] {e}")
        code = ExitCode.TOO_LARGE
    except (EnergyGameError, ValueError) as e:
        logger.error(f"[CLI] {e}")
        code = ExitCode.INPUT_ERROR

    if args.metrics_file:
        export_metrics(args.metrics_file)
    return code
