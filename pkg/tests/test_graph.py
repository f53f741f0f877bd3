from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_matching, nx_trees
from treesync.errors import InvalidGraph, NotATree, SizeLimit
from treesync.fixtures import asymmetric7, binary7, path, star, tree10
from treesync.generators import prufer_decode
from treesync.graph import (
    Graph,
    is_tree,
    leaf_distance_multiset,
    maximum_matching,
    maximum_matching_size,
    tree_path,
)

prufer = st.integers(min_value=3, max_value=14).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)
)


def one(seq):
    return [v + 1 for v in seq]


def test_is_tree_examples():
    assert is_tree(asymmetric7())
    assert is_tree(Graph(1))
    assert not is_tree(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert not is_tree(Graph(0))
    assert not is_tree(Graph(4, [(0, 1), (2, 3)]))


def test_graph_rejects_bad_edges():
    with pytest.raises(InvalidGraph):
        Graph(3, [(0, 0)])
    with pytest.raises(InvalidGraph):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidGraph):
        Graph(3, [(0, 3)])


def test_adjacency_sorted_and_symmetric():
    g = Graph(4, [(3, 0), (0, 2), (1, 0)])
    assert g.adj[0] == (1, 2, 3)
    assert all(g.has_edge(v, u) for u, v in g.edges)


def test_tree_path_examples():
    assert one(tree_path(binary7(), 3, 6)) == [4, 2, 1, 3, 7]
    assert tree_path(binary7(), 2, 2) == [2]
    assert one(tree_path(tree10(), 8, 9)) == [9, 5, 2, 6, 10]


def test_tree_path_needs_tree():
    with pytest.raises(NotATree):
        tree_path(Graph(3, [(0, 1)]), 0, 1)


def test_leaf_distance_examples():
    assert leaf_distance_multiset(tree10(), 0) == (2, 2, 3, 3)
    assert leaf_distance_multiset(path(2), 0) == (0, 1)
    # v6 and v7 sit three edges away from v2 (through the root)
    assert leaf_distance_multiset(binary7(), 1) == (1, 1, 3, 3)


def test_matching_examples():
    assert maximum_matching_size(binary7()) == 2
    info = maximum_matching(path(4))
    assert info.size == 2 and info.perfect
    assert maximum_matching_size(star(3)) == 1


def test_tree_matching_matches_brute_force():
    for n in range(1, 11):
        for g in nx_trees(n):
            assert maximum_matching_size(g) == brute_matching(g)


def test_exhaustive_matching_on_general_graphs():
    petersen_like = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    assert maximum_matching_size(petersen_like) == brute_matching(petersen_like) == 3
    with pytest.raises(SizeLimit):
        maximum_matching(Graph(17, [(i, (i + 1) % 17) for i in range(17)]))


@settings(max_examples=60, deadline=None)
@given(prufer)
def test_path_reversal_and_bfs_length(seq):
    g = prufer_decode(seq)
    for u in range(0, g.n, 3):
        dist = g.bfs_distances(u)
        for v in range(g.n):
            p = tree_path(g, u, v)
            assert p[::-1] == tree_path(g, v, u)
            assert len(p) - 1 == dist[v]


@settings(max_examples=60, deadline=None)
@given(prufer)
def test_pruning_arithmetic(seq):
    g = prufer_decode(seq)
    leaves = g.leaves()
    assert len(leaves) >= 2
    h, _ = g.induced(set(range(g.n)) - set(leaves))
    assert h.n == g.n - len(leaves)
    assert h.m == g.n - 1 - len(leaves)
