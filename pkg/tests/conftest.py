import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from metrel import VectorSet  # noqa: E402

FIG1 = [(0, 2), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2)]
STAR = [(0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
CYCLE = [(0, 2), (1, 1), (1, 3), (2, 0), (2, 4), (3, 1), (3, 3), (4, 2)]
FIG4 = [(0, 2), (1, 1), (1, 3), (2, 0), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 2)]
TREE5 = [(0, 3), (1, 2), (2, 1), (2, 3), (3, 0), (3, 2)]
TREE6 = [(0, 4), (1, 3), (2, 2), (2, 4), (3, 1), (4, 0), (4, 2)]

EXAMPLE_SETS = {
    "fig1": FIG1,
    "star": STAR,
    "cycle": CYCLE,
    "fig4": FIG4,
    "tree5": TREE5,
    "tree6": TREE6,
}


@pytest.fixture
def star():
    return VectorSet(STAR)


@pytest.fixture
def cycle():
    return VectorSet(CYCLE)


@pytest.fixture
def fig4():
    return VectorSet(FIG4)


@pytest.fixture
def tree5():
    return VectorSet(TREE5)


@pytest.fixture
def tree6():
    return VectorSet(TREE6)
