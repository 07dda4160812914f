import math
from fractions import Fraction as F

import pytest

from isingog.planar_core import network_from_coordinates, validate_network


def circle(n, i):
    a = 2 * math.pi * (i - 1) / n
    return (math.cos(a), math.sin(a))


def single_edge(x=F(1, 2)):
    return network_from_coordinates(
        {"b1": circle(2, 1), "b2": circle(2, 2)},
        ["b1", "b2"],
        [("b1", "b2", x)],
    )


def double_edge(x=F(1, 2), y=F(1, 3)):
    # edge 0 bulges upward, edge 1 downward
    return validate_network({
        "n": 2,
        "vertices": ["b1", "b2"],
        "boundary": ["b1", "b2"],
        "edges": [{"u": "b1", "v": "b2", "x": x}, {"u": "b1", "v": "b2", "x": y}],
        "rotations": {"b1": [0, 1], "b2": [1, 0]},
    })


def empty(n):
    return network_from_coordinates({f"b{i}": circle(n, i) for i in range(1, n + 1)},
                                    [f"b{i}" for i in range(1, n + 1)], [])


HUB_EDGES = [
    ("V6", "b1"), ("V6", "b2"), ("V6", "b3"), ("V6", "b6"), ("V7", "V6"),
    ("V7", "b5"), ("V7", "b4"), ("V7", "b3"), ("b4", "b3"),
]


def hub(xs=None):
    """Two interior hubs wired to six boundary vertices; nine edges, reduced."""
    if xs is None:
        xs = [F(1, k + 2) for k in range(9)]
    pos = {f"b{i}": circle(6, i) for i in range(1, 7)}
    pos["V6"] = (0.3, 0.1)
    pos["V7"] = (-0.2, -0.3)
    return network_from_coordinates(
        pos, [f"b{i}" for i in range(1, 7)],
        [(u, v, x) for (u, v), x in zip(HUB_EDGES, xs)],
    )


@pytest.fixture
def hub_net():
    return hub()


def path2(x=F(1, 2), y=F(1, 3)):
    # b1 - v - b2, two edges in series
    return network_from_coordinates(
        {"b1": circle(2, 1), "b2": circle(2, 2), "v": (0.0, 0.0)},
        ["b1", "b2"],
        [("b1", "v", x), ("v", "b2", y)],
    )


def seeded(n_range=(1, 4), **kw):
    """Hypothesis strategy of random networks, reproducible from an integer seed."""
    import random

    from hypothesis import strategies as st

    from isingog.corpus import random_network

    return st.tuples(st.integers(*n_range), st.integers(0, 2**32 - 1)).map(
        lambda a: random_network(random.Random(a[1]), a[0], **kw))


# acceptance lines, printed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
