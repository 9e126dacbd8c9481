import os
from pathlib import Path

import pytest
from hypothesis import settings

from atlsc.gamefile import load_game

ROOT = Path(__file__).resolve().parent.parent
GAMES = ROOT / "games"
GOLDEN = Path(__file__).resolve().parent / "golden"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def fig1():
    return load_game(GAMES / "fig1.game")


@pytest.fixture(scope="session")
def fig3():
    return load_game(GAMES / "fig3.game")
