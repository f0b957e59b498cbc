"""
Test configuration and fixtures.
"""

import os

import pytest
from dotenv import load_dotenv

from src.arena.builder import build_arena
from src.arena.types import GameArena, Owner
from src.config.settings import get_settings
from src.formats.generator import Family, GenSpec, generate

G1_TEXT = "eg 2 2\nv 0 0\nv 1 1\ne 0 1 -1\ne 1 0 1\n"


@pytest.fixture(autouse=True, scope="session")
def set_test_environment():
    """Load .env the way src/config/settings.py does, then pin what tests rely on."""
    load_dotenv()
    os.environ.pop("EGSOLVE_DEBUG_CHECKS", None)
    os.environ.pop("EGSOLVE_METRICS_FILE", None)
    yield


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached; drop the cache around every test so monkeypatched env applies."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def set_env(monkeypatch):
    """Set an EGSOLVE_* variable and drop settings already cached by earlier fixtures."""

    def _set(name: str, value: str) -> None:
        monkeypatch.setenv(name, value)
        get_settings.cache_clear()

    return _set


@pytest.fixture
def g1() -> GameArena:
    """Two-vertex cycle: player 0 pays 1 to move, player 1 earns it back."""
    return build_arena([(0, 1, -1), (1, 0, 1)], [Owner.PLAYER0, Owner.PLAYER1])


@pytest.fixture
def g1_text() -> str:
    return G1_TEXT


def self_loop(weight: int, owner: Owner = Owner.PLAYER0) -> GameArena:
    return build_arena([(0, 0, weight)], [owner])


@pytest.fixture
def losing_loop() -> GameArena:
    """Single player-0 self-loop of weight -1: every credit runs out."""
    return self_loop(-1)


@pytest.fixture
def neutral_loop() -> GameArena:
    return self_loop(0)


@pytest.fixture
def two_loops() -> GameArena:
    """Player-0 vertex with self-loops of weight -1 and +1."""
    return build_arena([(0, 0, -1), (0, 0, 1)], [Owner.PLAYER0])


def small_arenas(count: int, *, n_max: int = 8, seed: int = 0) -> list[GameArena]:
    """Deterministic mix of small arenas across all generator families."""
    arenas = []
    families = list(Family)
    for i in range(count):
        family = families[i % len(families)]
        n = 1 + (i * 7 + seed) % n_max
        spec = GenSpec(
            n=n,
            d=1.0 + (i % 3),
            wmin=-3,
            wmax=3,
            p0_frac=0.5,
            seed=seed * 100_003 + i,
            family=family,
        )
        arenas.append(generate(spec))
    return arenas


@pytest.fixture
def random_arenas() -> list[GameArena]:
    return small_arenas(60)
