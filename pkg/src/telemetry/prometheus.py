"""
=============================================================================
Prometheus Metrics Module
=============================================================================

Prometheus metrics for monitoring solver runs.

METRICS EXPOSED:
----------------
- egsolve_solves_total: Solves by variant, mapping and outcome
- egsolve_lifts_total: Lifting-operator applications by variant
- egsolve_rounds_total: Sweeps / frontier rounds by variant
- egsolve_solve_seconds: Histogram of solve wall time by variant
- egsolve_last_arena_*: Size of the most recently solved arena

The collectors live in a private registry so that importing the library
never pollutes the global default registry of a host application.
=============================================================================
"""

import logging
from pathlib import Path

from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    generate_latest,
    write_to_textfile,
)

logger = logging.getLogger(__name__)

REGISTRY = CollectorRegistry()

# =============================================================================
# Prometheus Metrics Definitions
# =============================================================================

SOLVE_COUNTER = Counter(
    "egsolve_solves_total",
    "Total number of solver runs",
    ["variant", "mapping", "status"],
    registry=REGISTRY,
)

LIFT_COUNTER = Counter(
    "egsolve_lifts_total",
    "Total lifting-operator applications",
    ["variant"],
    registry=REGISTRY,
)

ROUND_COUNTER = Counter(
    "egsolve_rounds_total",
    "Total sweeps or frontier rounds",
    ["variant"],
    registry=REGISTRY,
)

# Buckets span desk-scale fixtures up to the 900 s benchmark cutoff
SOLVE_SECONDS = Histogram(
    "egsolve_solve_seconds",
    "Solver wall time in seconds",
    ["variant"],
    buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 15.0, 60.0, 300.0, 900.0],
    registry=REGISTRY,
)

LAST_ARENA_VERTICES = Gauge(
    "egsolve_last_arena_vertices",
    "Vertex count of the most recently solved arena",
    registry=REGISTRY,
)

LAST_ARENA_EDGES = Gauge(
    "egsolve_last_arena_edges",
    "Edge count of the most recently solved arena",
    registry=REGISTRY,
)

LAST_ARENA_MG = Gauge(
    "egsolve_last_arena_mg",
    "M_G bound of the most recently solved arena",
    registry=REGISTRY,
)


# =============================================================================
# Metric Recording Functions
# =============================================================================


def record_solve(variant: str, mapping: str, status: str, seconds: float) -> None:
    """Record one finished (or failed) solve."""
    SOLVE_COUNTER.labels(variant=variant, mapping=mapping, status=status).inc()
    SOLVE_SECONDS.labels(variant=variant).observe(seconds)


def record_work(variant: str, lifts: int, rounds: int) -> None:
    """Record lifting work performed by a solve."""
    LIFT_COUNTER.labels(variant=variant).inc(lifts)
    ROUND_COUNTER.labels(variant=variant).inc(rounds)


def set_arena_size(vertices: int, edges: int, mg: int) -> None:
    """Set the size gauges for the arena being solved."""
    LAST_ARENA_VERTICES.set(vertices)
    LAST_ARENA_EDGES.set(edges)
    LAST_ARENA_MG.set(mg)


# =============================================================================
# Exposition
# =============================================================================


def render_metrics() -> bytes:
    """Metrics in Prometheus text exposition format."""
    return generate_latest(REGISTRY)


def export_metrics(path: str | Path) -> None:
    """Write the registry to a node-exporter style textfile."""
    write_to_textfile(str(path), REGISTRY)
    logger.info(f"[METRICS] Wrote Prometheus metrics to {path}")
