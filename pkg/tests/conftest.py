import random

import pytest

from ryserlab.constructions import projective_plane, triangle
from ryserlab.system import LinearSystem

FANO_LINES = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]


@pytest.fixture
def fano():
    return LinearSystem(7, FANO_LINES)


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture(scope="session")
def planes():
    return {q: projective_plane(q) for q in (2, 3, 4, 5)}


def random_relabel(sys, rng: random.Random):
    perm = list(range(sys.num_points))
    rng.shuffle(perm)
    order = list(range(sys.num_lines))
    rng.shuffle(order)
    return sys.relabel(perm, order)
