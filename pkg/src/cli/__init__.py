# CLI package
from src.cli.bench import BenchRow, run_bench
from src.cli.commands import ExitCode, build_parser, run_command

__all__ = [
    "BenchRow",
    "ExitCode",
    "build_parser",
    "run_command",
    "run_bench",
]
