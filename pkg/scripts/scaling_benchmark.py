#!/usr/bin/env python
"""
=============================================================================
Scaling Benchmark Script
=============================================================================

Generates arenas of growing size and reports how the frontier and sweep
solvers scale against the sequential worklist solver.

USAGE:
------
# Default sizes (10^3 .. 10^5 vertices), frontier vs seq
uv run python scripts/scaling_benchmark.py

# Custom sizes and worker counts, with the sweep solver too
uv run python scripts/scaling_benchmark.py --sizes 1000,20000 --workers 1,8 --sweep

OUTPUT:
-------
        n       |E|   seq (s)   frontier/1      x   frontier/8      x
     1000      3000     0.041        0.030   1.4x        0.027   1.5x
=============================================================================
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

from src.errors import EnergyGameError, SolveTimeoutError
from src.formats.generator import Family, GenSpec, generate
from src.solvers.parallel import ParallelConfig, solve_frontier, solve_sweep
from src.solvers.sequential import solve_seq


@dataclass
class ScalingResult:
    """Timings for one arena size."""

    n: int
    edges: int
    seq_time: float
    seq_lifts: int
    frontier_times: dict[int, float] = field(default_factory=dict)
    sweep_times: dict[int, float] = field(default_factory=dict)
    frontier_lifts: int = 0
    sweep_lifts: int = 0


def run_size(n: int, args: argparse.Namespace) -> ScalingResult:
    spec = GenSpec(n=n, d=args.d, wmin=-args.weight, wmax=args.weight, seed=args.seed, family=args.family)
    arena = generate(spec)

    seq = solve_seq(arena, timeout=args.timeout)
    result = ScalingResult(n=n, edges=arena.num_edges, seq_time=seq.wall_time, seq_lifts=seq.lifts)

    for workers in args.workers:
        config = ParallelConfig(workers=workers)
        frontier = solve_frontier(arena, config, timeout=args.timeout)
        if frontier.measure != seq.measure:
            raise RuntimeError(f"frontier/{workers} disagrees with seq on n={n}")
        result.frontier_times[workers] = frontier.wall_time
        result.frontier_lifts = frontier.lifts

        if args.sweep:
            sweep = solve_sweep(arena, config, timeout=args.timeout)
            result.sweep_times[workers] = sweep.wall_time
            result.sweep_lifts = sweep.lifts
    return result


def print_report(results: list[ScalingResult], workers: list[int], sweep: bool) -> None:
    print("\n" + "=" * 72)
    print("SCALING BENCHMARK REPORT")
    print("=" * 72)

    header = f"{'n':>9} {'|E|':>9} {'seq (s)':>9}"
    for count in workers:
        header += f" {f'frontier/{count}':>12} {'x':>6}"
        if sweep:
            header += f" {f'sweep/{count}':>10}"
    print(header)

    for r in results:
        line = f"{r.n:>9} {r.edges:>9} {r.seq_time:>9.3f}"
        for count in workers:
            t = r.frontier_times[count]
            line += f" {t:>12.3f} {r.seq_time / t if t else 0.0:>5.1f}x"
            if sweep:
                line += f" {r.sweep_times[count]:>10.3f}"
        print(line)

    last = results[-1]
    print(f"\nLifts at n={last.n}: seq={last.seq_lifts} frontier={last.frontier_lifts}", end="")
    print(f" sweep={last.sweep_lifts}" if sweep else "")
    print("=" * 72)


def main() -> None:
    parser = argparse.ArgumentParser(description="Benchmark solver scaling on generated arenas")
    parser.add_argument("--sizes", default="1000,10000,100000", help="Comma-separated vertex counts")
    parser.add_argument("--workers", default="1,4,8", help="Comma-separated worker counts")
    parser.add_argument("--d", type=float, default=3.0, help="Average out-degree")
    parser.add_argument("--weight", type=int, default=10, help="Weights drawn from [-W, W]")
    parser.add_argument("--family", choices=[f.value for f in Family], default=Family.RANDOM.value)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--timeout", type=float, default=600.0, help="Per-solve budget in seconds")
    parser.add_argument("--sweep", action="store_true", help="Also time the sweep solver")
    parser.add_argument("--json", action="store_true", help="Output results as JSON")
    args = parser.parse_args()
    args.workers = [int(w) for w in args.workers.split(",")]
    sizes = [int(n) for n in args.sizes.split(",")]

    print(f"Family: {args.family}, d={args.d}, weights in [-{args.weight}, {args.weight}]")
    print(f"Sizes: {sizes}, workers: {args.workers}")

    try:
        results = [run_size(n, args) for n in sizes]
    except SolveTimeoutError as e:
        print(f"\nBenchmark stopped: {e}")
        sys.exit(2)
    except (EnergyGameError, RuntimeError) as e:
        print(f"\nBenchmark failed: {e}")
        sys.exit(1)

    if args.json:
        print(json.dumps([asdict(r) for r in results], indent=2))
    else:
        print_report(results, args.workers, args.sweep)


if __name__ == "__main__":
    main()
