import random
from fractions import Fraction

import pytest
from hypothesis import settings

from coopaf.game import canonical_game

HALF = Fraction(1, 2)

# first calls pay for numba compilation or cache loading
settings.register_profile("coopaf", deadline=None)
settings.load_profile("coopaf")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def half_game():
    return canonical_game(HALF, HALF, HALF)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
