import pytest

from interestmax.graph import Graph

_ACCEPTANCE_LINES = []


def path_graph(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n=n)


def star_graph(leaves):
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def complete_graph(n):
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)], n=n)


def random_graph(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(edges, n=n)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def star3():
    return star_graph(3)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""
    def _report(name, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
