"""Quotient networks of balanced colorings and their undirected simplification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .balanced import canonical, classes_of, require_balanced, _check_length
from .errors import NotBalanced
from .graph import Graph, is_tree, require_tree


@dataclass(frozen=True)
class QuotientNetwork:
    """``mult[c][d]``: neighbors in class ``d`` of any vertex of class ``c``."""

    k: int
    mult: tuple[tuple[int, ...], ...]
    class_members: tuple[tuple[int, ...], ...]

    def to_dict(self, one_indexed: bool = True) -> dict:
        off = 1 if one_indexed else 0
        return {
            "k": self.k,
            "mult": [list(r) for r in self.mult],
            "classes": [[v + off for v in c] for c in self.class_members],
        }


def _row(g: Graph, col: Sequence[int], v: int, k: int) -> tuple[int, ...]:
    row = [0] * k
    for w in g.adj[v]:
        row[col[w]] += 1
    return tuple(row)


def quotient_network(g: Graph, col: Sequence[int]) -> QuotientNetwork:
    _check_length(g, col)
    col = canonical(col)
    members = classes_of(col)
    k = len(members)
    rows = []
    for c, klass in enumerate(members):
        row = _row(g, col, klass[0], k)
        for v in klass[1:]:
            if _row(g, col, v, k) != row:
                raise NotBalanced(
                    f"vertices {klass[0]} and {v} share a class but see different neighbor colors"
                )
        rows.append(row)
    return QuotientNetwork(k, tuple(rows), tuple(tuple(c) for c in members))


def undirected_simplification(q: QuotientNetwork) -> Graph:
    """Classes joined by an edge exactly when arrows run both ways between them."""
    edges = [
        (c, d)
        for c in range(q.k)
        for d in range(c + 1, q.k)
        if q.mult[c][d] >= 1 and q.mult[d][c] >= 1
    ]
    return Graph(q.k, edges)


def check_quotient_tree_law(g: Graph, col: Sequence[int]) -> bool:
    """G* is a tree and every class holding a leaf of ``g`` is a leaf of G*.

    When G* is a single vertex (all of ``g`` in one class, which on a tree
    only happens for K_2) that vertex has degree 0 and counts as a leaf.
    """
    require_tree(g)
    require_balanced(g, col)
    col = canonical(col)
    gs = undirected_simplification(quotient_network(g, col))
    if not is_tree(gs):
        return False
    if gs.n == 1:
        return True
    return all(gs.degree(col[l]) == 1 for l in g.leaves())


def quotient_cycles_ok(q: QuotientNetwork) -> bool:
    """Every arrow between distinct classes of a tree quotient is part of a 2-cycle
    and the simplification has no cycles, so the only cycles are loops and 2-cycles."""
    for c in range(q.k):
        for d in range(q.k):
            if c != d and (q.mult[c][d] >= 1) != (q.mult[d][c] >= 1):
                return False
    gs = undirected_simplification(q)
    return gs.m == gs.n - 1 and gs.is_connected()
