"""
=============================================================================
Configuration Settings Module
=============================================================================

Pydantic-based settings management with environment variable support.
All configuration is loaded from .env file or EGSOLVE_* environment variables.

DEBUG CHECKS NOTE:
------------------
EGSOLVE_DEBUG_CHECKS=1 turns on the expensive invariant scans (counter
invariant in the sequential solver, frontier completeness and round
monotonicity in the frontier solver). They are O(|E|) per loop head / round,
so keep them off for benchmarks.
=============================================================================
"""

from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env into os.environ
load_dotenv()


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Library functions take explicit parameters; these values only provide
    defaults for the CLI and for callers that pass None.
    """

    model_config = SettingsConfigDict(
        env_prefix="EGSOLVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # -------------------------------------------------------------------------
    # Application Settings
    # -------------------------------------------------------------------------
    log_level: str = "INFO"

    # Expensive invariant scans (counter invariant, frontier completeness)
    debug_checks: bool = False

    # -------------------------------------------------------------------------
    # Solver Defaults
    # -------------------------------------------------------------------------
    # 15 minutes per solve
    default_timeout: float = Field(default=900.0, gt=0)
    default_workers: int = Field(default=1, ge=1)
    worklist_order: Literal["fifo", "lifo"] = "fifo"

    # Pops between two deadline checks in the sequential solver
    cancel_check_interval: int = Field(default=4096, ge=1)

    # Declared |W_max|; arenas with larger weights are rejected at build time
    max_abs_weight: int = Field(default=2**31 - 1, ge=0, lt=2**63)

    # -------------------------------------------------------------------------
    # Oracle Guards (hard limits, never silently degraded)
    # -------------------------------------------------------------------------
    oracle_max_product_states: int = Field(default=10**7, ge=1)
    oracle_max_strategies: int = Field(default=10**5, ge=1)

    # -------------------------------------------------------------------------
    # Observability
    # -------------------------------------------------------------------------
    # Prometheus text exposition target written by the CLI after each command
    metrics_file: str | None = None


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Uses lru_cache to ensure settings are only loaded once.
    Tests that patch the environment must call get_settings.cache_clear().
    """
    return Settings()
