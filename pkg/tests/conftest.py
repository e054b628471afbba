import pytest

from cflrand.automata import Dfa


@pytest.fixture
def dfa_01_star():
    # (01)*: accept state 0, after-zero state 1, sink 2
    return Dfa(("0", "1"), ((1, 2), (2, 0), (2, 2)), 0, frozenset({0}))


@pytest.fixture
def dfa_all():
    return Dfa(("0", "1"), ((0, 0),), 0, frozenset({0}))


@pytest.fixture
def dfa_none():
    return Dfa(("0", "1"), ((0, 0),), 0, frozenset())


@pytest.fixture
def dfa_even_ones():
    return Dfa(("0", "1"), ((0, 1), (1, 0)), 0, frozenset({0}))
