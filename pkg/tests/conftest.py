import numpy as np
import pytest

from dscentrality import Graph

_ACCEPTANCE_LINES: list[str] = []


def make_graph(n, edges):
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: np.random.Generator, n: int, extra: float = 1.5) -> Graph:
    """Random spanning tree plus about ``extra * n`` random chords."""
    perm = rng.permutation(n)
    edges = [(int(perm[i]), int(perm[rng.integers(0, i)])) for i in range(1, n)]
    m = int(extra * n)
    if n > 2:
        a = rng.integers(0, n, size=m)
        b = rng.integers(0, n, size=m)
        edges += [(int(u), int(v)) for u, v in zip(a, b) if u != v]
    return Graph.from_edges(n, edges)


def random_graph_battery(count: int, max_n: int, seed: int = 2024) -> list[Graph]:
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(count):
        n = int(rng.integers(3, max_n + 1))
        graphs.append(random_connected_graph(rng, n, extra=float(rng.uniform(0.2, 3.0))))
    return graphs


@pytest.fixture
def path3():
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def dyad():
    return make_graph(2, [(0, 1)])


@pytest.fixture
def star3():
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def triangle_pendant():
    return make_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
