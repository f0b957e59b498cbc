# Solvers package
from src.solvers.dispatch import solve
from src.solvers.kernels import choose_chunk_size, lift_chunked
from src.solvers.parallel import ParallelConfig, solve_frontier, solve_sweep
from src.solvers.report import AdjacencyMapping, MappingKind, SolveReport, Variant
from src.solvers.sequential import SequentialSolver, check_counter_invariant, solve_seq

__all__ = [
    "AdjacencyMapping",
    "MappingKind",
    "ParallelConfig",
    "SequentialSolver",
    "SolveReport",
    "Variant",
    "check_counter_invariant",
    "choose_chunk_size",
    "lift_chunked",
    "solve",
    "solve_frontier",
    "solve_seq",
    "solve_sweep",
]
