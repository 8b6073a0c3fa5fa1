import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from pfp_netlab.graph import Graph, from_edge_list  # noqa: E402

DATA = Path(__file__).parent / "data"


def complete(n, offset=0):
    return from_edge_list([(offset + i, offset + j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return from_edge_list([(0, i) for i in range(1, leaves + 1)])


def cycle(n):
    return from_edge_list([(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edge_list([(i, i + 1) for i in range(n - 1)])


# hub 0 joined to four leaves, plus a link between leaves 1 and 2
HUB = from_edge_list([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
# K4 on 0..3 with node 4 hanging off node 0
PENDANT_K4 = from_edge_list([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])


def assert_simple(g: Graph):
    total = 0
    for v in g.nodes:
        nbrs = g.neighbors(v)
        assert v not in nbrs
        assert list(nbrs) == sorted(set(nbrs))
        for u in nbrs:
            assert v in g.neighbors(u)
        total += len(nbrs)
    assert total == 2 * g.edge_count


def to_adj(g: Graph):
    return {v: set(g.neighbors(v)) for v in g.nodes}


def oracle_graphs():
    """Every connected graph on <= 6 nodes up to isomorphism, then 200 random ones on 7-12."""
    nx = pytest.importorskip("networkx")
    graphs = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= 6 and nx.is_connected(h):
            if h.number_of_edges() == 0:
                graphs.append(Graph({0: []}))
            else:
                graphs.append(from_edge_list(h.edges()))
    rng = np.random.default_rng(20060501)
    for _ in range(200):
        n = int(rng.integers(7, 13))
        graphs.append(from_edge_list(oracles.random_connected_edges(rng, n, rng.uniform(0.05, 0.6))))
    return graphs


@pytest.fixture(scope="session")
def golden():
    from pfp_netlab.formats import parse_peering_list
    return parse_peering_list((DATA / "golden.asl").read_text())


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
