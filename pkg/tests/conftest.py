import pytest

from orthomatroids import FiniteOrthoLattice, discrete, mo, new_orthoset

O6_JSON = {
    "nodes": ["0", "a", "b", "b'", "a'", "1"],
    "leq_pairs": [[0, 1], [1, 2], [2, 5], [0, 3], [3, 4], [4, 5]],
    "ortho": [5, 4, 3, 2, 1, 0],
}


@pytest.fixture
def path3():
    """a - b - c: the two ends are orthogonal to the middle only."""
    return new_orthoset(3, [(0, 1), (1, 2)], ["a", "b", "c"])


@pytest.fixture
def edge_plus_point():
    return new_orthoset(3, [(0, 1)])


@pytest.fixture
def triangle():
    return discrete(3)


@pytest.fixture
def mo2():
    return mo(2)


@pytest.fixture
def o6():
    return FiniteOrthoLattice.from_json(O6_JSON)
