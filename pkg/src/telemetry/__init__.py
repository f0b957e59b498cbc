# Telemetry package
from src.telemetry.prometheus import (
    export_metrics,
    record_solve,
    record_work,
    render_metrics,
    set_arena_size,
)

__all__ = ["export_metrics", "record_solve", "record_work", "render_metrics", "set_arena_size"]
