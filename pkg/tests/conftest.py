from __future__ import annotations

import itertools

import networkx as nx
import pytest

from treesync.graph import Graph


def set_partitions(n):
    """All restricted growth strings of length n (canonical colorings)."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in range(top + 1):
            yield from rec(prefix + [k], top + 1 if k == top else top)

    yield from rec([0], 1)


def nx_trees(n):
    """Unlabeled trees of order n from networkx, as Graphs (independent oracle)."""
    if n == 1:
        return [Graph(1)]
    return [Graph(n, list(t.edges())) for t in nx.nonisomorphic_trees(n)]


def brute_matching(g: Graph) -> int:
    """Largest set of pairwise disjoint edges, by trying subsets largest first."""
    for k in range(g.n // 2, 0, -1):
        for sub in itertools.combinations(g.edges, k):
            used = [v for e in sub for v in e]
            if len(set(used)) == len(used):
                return k
    return 0


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture(scope="session")
def small_trees():
    return [t for n in range(1, 9) for t in nx_trees(n)]


def spectrum_gap(a, b) -> float:
    """Largest distance when each value of ``a`` is paired with its nearest unused value in ``b``."""
    pool = [complex(z) for z in b]
    assert len(pool) == len(a)
    worst = 0.0
    for z in a:
        i = min(range(len(pool)), key=lambda k: abs(pool[k] - z))
        worst = max(worst, abs(pool.pop(i) - z))
    return worst
