# Formats package
from src.formats.arena_format import parse_arena, write_arena
from src.formats.generator import Family, GenSpec, generate
from src.formats.prng import XorShift64Star
from src.formats.solution_format import SolutionDocument, parse_solution, write_solution

__all__ = [
    "Family",
    "GenSpec",
    "SolutionDocument",
    "XorShift64Star",
    "generate",
    "parse_arena",
    "parse_solution",
    "write_arena",
    "write_solution",
]
