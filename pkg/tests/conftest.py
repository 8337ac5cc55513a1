import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from omconf.core import StateSpace  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

NAMES = "abcdefgh"


def space_of(n: int) -> StateSpace:
    return StateSpace(NAMES[:n])


@pytest.fixture
def s3() -> StateSpace:
    return space_of(3)


@pytest.fixture
def s4() -> StateSpace:
    return space_of(4)


@st.composite
def level_lists(draw, min_n=1, max_n=3, max_level=3):
    n = draw(st.integers(min_n, max_n))
    levels = draw(st.lists(st.integers(0, max_level), min_size=n, max_size=n))
    if not any(levels):
        levels[draw(st.integers(0, n - 1))] = 1
    return levels


@st.composite
def weight_lists(draw, min_n=1, max_n=3, max_weight=6):
    n = draw(st.integers(min_n, max_n))
    weights = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    if not any(weights):
        weights[draw(st.integers(0, n - 1))] = 1
    return weights


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
