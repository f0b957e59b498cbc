# Measure package
from src.measure.progress import (
    ProgressMeasure,
    is_epm,
    lift,
    map_back,
    violations,
    winning_set,
)
from src.measure.strategy import Strategy, extract_strategy
from src.measure.values import (
    TOP,
    EnergyValue,
    Top,
    cap,
    format_value,
    ominus,
    precedes,
    value_max,
    value_min,
)

__all__ = [
    "TOP",
    "EnergyValue",
    "ProgressMeasure",
    "Strategy",
    "Top",
    "cap",
    "extract_strategy",
    "format_value",
    "is_epm",
    "lift",
    "map_back",
    "ominus",
    "precedes",
    "value_max",
    "value_min",
    "violations",
    "winning_set",
]
