"""
=============================================================================
Energy Values
=============================================================================

The codomain C_G = {0..M_G} ∪ {TOP} of progress measures.

- EnergyValue is a plain int for finite values, or the singleton TOP.
- precedes(a, b) is the total order ⪯ with TOP maximal.
- ominus(a, b) is truncated subtraction max(0, a - b), absorbing on TOP.
- cap(x, mg) maps anything above M_G to TOP (applied after every lift).
=============================================================================
"""

from enum import Enum
from typing import Final, Literal

from src.errors import ArithmeticOverflowError

INT64_MIN: Final = -(2**63)
INT64_MAX: Final = 2**63 - 1


class Top(Enum):
    """The absorbing top element; never a finite number."""

    TOP = "T"

    def __repr__(self) -> str:
        return "TOP"

    def __str__(self) -> str:
        return "T"


TOP: Final = Top.TOP

EnergyValue = int | Literal[Top.TOP]


def is_top(a: EnergyValue) -> bool:
    return a is TOP


def precedes(a: EnergyValue, b: EnergyValue) -> bool:
    """a ⪯ b."""
    if b is TOP:
        return True
    if a is TOP:
        return False
    return a <= b


def value_max(a: EnergyValue, b: EnergyValue) -> EnergyValue:
    """⪯-maximum."""
    return b if precedes(a, b) else a


def value_min(a: EnergyValue, b: EnergyValue) -> EnergyValue:
    """⪯-minimum."""
    return a if precedes(a, b) else b


def ominus(a: EnergyValue, b: int) -> EnergyValue:
    """
    Truncated subtraction a ⊖ b.

    The result is NOT capped to M_G; callers cap after taking min/max.
    Raises ArithmeticOverflowError when a - b leaves the signed 64-bit range.
    """
    if a is TOP:
        return TOP
    diff = a - b
    if not INT64_MIN <= diff <= INT64_MAX:
        raise ArithmeticOverflowError(f"{a} - ({b}) is not representable in 64 bits")
    return max(0, diff)


def cap(value: EnergyValue, mg: int) -> EnergyValue:
    """Map finite values above M_G to TOP."""
    if value is TOP or value > mg:
        return TOP
    return value


def format_value(value: EnergyValue) -> str:
    return "T" if value is TOP else str(value)


def sort_key(value: EnergyValue) -> tuple[int, int]:
    """Key realising ⪯ for min()/max()/sorted()."""
    return (1, 0) if value is TOP else (0, value)
