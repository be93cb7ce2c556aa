import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from services.graph_core import Colouring, Graph, complete, cycle, path, star

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile(
    "thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    """Arbitrary simple graph on min_n..max_n vertices."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, chosen in zip(pairs, keep) if chosen])


def colouring(*colours, k):
    return Colouring(tuple(colours), k)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def claw():
    return star(4)


@pytest.fixture
def triangle_with_pendant():
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(name: str, text: str) -> str:
        target = tmp_path / name
        target.write_text(text)
        return str(target)

    return _write
