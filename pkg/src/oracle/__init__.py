# Oracle package
from src.oracle.attractor import min_credit_attractor
from src.oracle.strategies import (
    losing_vertices,
    strategy_counterexample,
    verify_measure,
    verify_strategy,
    winning_set_by_strategy_enum,
)

__all__ = [
    "losing_vertices",
    "min_credit_attractor",
    "strategy_counterexample",
    "verify_measure",
    "verify_strategy",
    "winning_set_by_strategy_enum",
]
