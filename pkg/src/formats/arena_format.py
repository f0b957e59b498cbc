"""
=============================================================================
Arena Text Format
=============================================================================

    eg <V> <E>
    v <id> <owner>          exactly V lines, ids 0..V-1 in order
    e <src> <dst> <weight>  exactly E lines

Lines end with LF only and lines starting with "#" are comments. Fields are
separated by exactly one space. Integers are canonical decimal: an optional
leading "-", no leading zeros, no "-0". Every parse error names the 1-based
line it was found on.

write_arena emits edges in CSR order, so parse_arena(write_arena(a))
rebuilds `a` exactly.
=============================================================================
"""

import logging
import re
from collections.abc import Iterator

from src.arena.builder import build_arena_from_arrays
from src.arena.types import GameArena
from src.config.settings import get_settings
from src.errors import ArenaSyntaxError, CountMismatchError, WeightBoundError

logger = logging.getLogger(__name__)

INTEGER = re.compile(r"0|-?[1-9][0-9]*")


def records(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, fields) for every non-comment, non-empty line."""
    for number, line in enumerate(text.split("\n"), start=1):
        if "\r" in line:
            raise ArenaSyntaxError(number, "carriage return in line; lines end with '\\n'")
        if not line or line.startswith("#"):
            continue
        fields = line.split(" ")
        if "" in fields:
            raise ArenaSyntaxError(number, "fields must be separated by single spaces")
        yield number, fields


def parse_int(token: str, line: int, what: str) -> int:
    if not INTEGER.fullmatch(token):
        raise ArenaSyntaxError(line, f"{what} is not an integer: {token!r}")
    return int(token)


def _expect(fields: list[str], tag: str, arity: int, line: int) -> None:
    if fields[0] != tag:
        raise ArenaSyntaxError(line, f"expected '{tag}' record, found {fields[0]!r}")
    if len(fields) != arity + 1:
        raise ArenaSyntaxError(line, f"'{tag}' record takes {arity} fields, found {len(fields) - 1}")


def parse_arena(text: str, *, max_abs_weight: int | None = None) -> GameArena:
    """Parse and validate an arena document."""
    lines = records(text)
    header = next(lines, None)
    if header is None:
        raise ArenaSyntaxError(1, "missing 'eg' header")
    line, fields = header
    _expect(fields, "eg", 2, line)
    num_vertices = parse_int(fields[1], line, "vertex count")
    num_edges = parse_int(fields[2], line, "edge count")
    bound = max_abs_weight if max_abs_weight is not None else get_settings().max_abs_weight
    if num_vertices < 1 or num_edges < 0:
        raise ArenaSyntaxError(line, "header counts must be V >= 1 and E >= 0")

    owners: list[int] = []
    src: list[int] = []
    dst: list[int] = []
    weights: list[int] = []

    for line, fields in lines:
        if fields[0] == "v":
            if src or len(owners) == num_vertices:
                raise CountMismatchError(f"line {line}: more than {num_vertices} vertex records or vertex after edges")
            _expect(fields, "v", 2, line)
            vid = parse_int(fields[1], line, "vertex id")
            if vid != len(owners):
                raise ArenaSyntaxError(line, f"vertex ids must be dense and ordered; expected {len(owners)}, found {vid}")
            owner = parse_int(fields[2], line, "owner")
            if owner not in (0, 1):
                raise ArenaSyntaxError(line, f"owner must be 0 or 1, found {owner}")
            owners.append(owner)
        elif fields[0] == "e":
            if len(owners) != num_vertices:
                raise CountMismatchError(f"header declares {num_vertices} vertices, found {len(owners)} before the first edge")
            if len(src) == num_edges:
                raise CountMismatchError(f"line {line}: more than {num_edges} edge records")
            _expect(fields, "e", 3, line)
            u = parse_int(fields[1], line, "source")
            v = parse_int(fields[2], line, "target")
            w = parse_int(fields[3], line, "weight")
            for vertex in (u, v):
                if not 0 <= vertex < num_vertices:
                    raise ArenaSyntaxError(line, f"vertex id {vertex} outside [0, {num_vertices})")
            if abs(w) > bound:
                raise WeightBoundError(w, bound)
            src.append(u)
            dst.append(v)
            weights.append(w)
        else:
            raise ArenaSyntaxError(line, f"unknown record type {fields[0]!r}")

    if len(owners) != num_vertices:
        raise CountMismatchError(f"header declares {num_vertices} vertices, found {len(owners)}")
    if len(src) != num_edges:
        raise CountMismatchError(f"header declares {num_edges} edges, found {len(src)}")

    arena = build_arena_from_arrays(src, dst, weights, owners, max_abs_weight=bound)
    logger.debug(f"[ARENA] Parsed arena with {num_vertices} vertices and {num_edges} edges")
    return arena


def write_arena(arena: GameArena) -> str:
    """Serialize an arena; edges in CSR order."""
    parts = [f"eg {arena.num_vertices} {arena.num_edges}\n"]
    parts.extend(f"v {v} {owner}\n" for v, owner in enumerate(arena.owners.tolist()))
    parts.extend(f"e {u} {v} {w}\n" for u, v, w in arena.edges())
    return "".join(parts)
