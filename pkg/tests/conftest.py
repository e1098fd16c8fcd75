import itertools

import pytest
from hypothesis import strategies as st

from wlpgraph.graph import Graph, cycle, disjoint_union, empty_graph, from_edge_list, pan, path, tadpole

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def small_corpus():
    """Named graphs with at most 18 vertices."""
    out = []
    out += [(f"P_{n}", path(n)) for n in range(1, 13)]
    out += [(f"C_{n}", cycle(n)) for n in range(3, 13)]
    out += [(f"T_{m},{n}", tadpole(m, n)) for m in range(3, 7) for n in range(0, 6)]
    out += [("E_0", empty_graph(0)), ("E_6", empty_graph(6))]
    out += [("P_3+C_5", disjoint_union(path(3), cycle(5))), ("Pan_4+P_2", disjoint_union(pan(4), path(2)))]
    out.append(("K_5", from_edge_list(5, itertools.combinations(range(5), 2))))
    out.append(("K_3,3", from_edge_list(6, [(a, b) for a in range(3) for b in range(3, 6)])))
    return out


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return from_edge_list(n, chosen)


def max_independent_size(g: Graph) -> int:
    """Largest independent set by direct subset enumeration."""
    best = 0
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if all(v not in g.neighbors(u) for u, v in itertools.combinations(s, 2)):
                best = k
                break
    return best
