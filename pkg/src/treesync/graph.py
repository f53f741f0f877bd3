"""Undirected simple graphs on vertices ``0..n-1`` with tree-specific queries."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidGraph, NotATree, SizeLimit

# exhaustive matching search is a DP over vertex subsets
MATCHING_ORACLE_MAX_N = 16


class Graph:
    """Immutable undirected simple graph.

    Edges are stored once as ``(u, v)`` with ``u < v``; neighbor lists are
    sorted so iteration order is deterministic.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidGraph(f"vertex count must be non-negative, got {n}")
        seen = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge {{{u},{v}}} has a vertex outside 0..{n - 1}")
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InvalidGraph(f"duplicate edge {{{u},{v}}}")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in nbrs)

    @classmethod
    def from_one_indexed(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, [(u - 1, v - 1) for u, v in edges])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabeled ``0..k-1`` in ascending vertex order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), edges), keep

    def bfs_distances(self, source: int) -> list[int]:
        """Edge-count distances from ``source``; ``-1`` marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return min(self.bfs_distances(0)) >= 0

    @cached_property
    def _is_tree(self) -> bool:
        return self.n > 0 and self.m == self.n - 1 and self.is_connected()


def is_tree(g: Graph) -> bool:
    """True iff ``g`` is connected with exactly ``n - 1`` edges."""
    return g._is_tree


def require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise NotATree(f"graph with n={g.n}, m={g.m} is not a tree")


def tree_path(g: Graph, u: int, v: int) -> list[int]:
    """The unique simple path ``u, ..., v`` in a tree."""
    require_tree(g)
    parent = [-1] * g.n
    parent[u] = u
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for w in g.adj[x]:
            if parent[w] < 0:
                parent[w] = x
                queue.append(w)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def leaf_distance_multiset(g: Graph, c: int) -> tuple[int, ...]:
    """Distances from ``c`` to every leaf of ``g``, as a sorted tuple.

    Two vertices have equal multisets exactly when these tuples are equal.
    """
    require_tree(g)
    dist = g.bfs_distances(c)
    return tuple(sorted(dist[l] for l in g.leaves()))


class MatchingInfo(NamedTuple):
    size: int
    perfect: bool


def _tree_matching(g: Graph) -> int:
    # free[v]: best in subtree(v) with v left unmatched; best[v]: best overall
    n = g.n
    order, parent = [0], [-1] * n
    seen = [False] * n
    seen[0] = True
    for x in order:
        for w in g.adj[x]:
            if not seen[w]:
                seen[w] = True
                parent[w] = x
                order.append(w)
    free = [0] * n
    best = [0] * n
    for v in reversed(order):
        children = [w for w in g.adj[v] if parent[w] == v]
        total = sum(best[w] for w in children)
        free[v] = total
        gain = max((free[w] - best[w] + 1 for w in children), default=0)
        best[v] = total + max(gain, 0)
    return best[0]


def _exhaustive_matching(g: Graph) -> int:
    if g.n > MATCHING_ORACLE_MAX_N:
        raise SizeLimit(
            f"exhaustive matching search is limited to n <= {MATCHING_ORACLE_MAX_N} (got {g.n})"
        )
    nbr_mask = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    memo: dict[int, int] = {0: 0}

    def solve(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        out = solve(rest)
        cand = nbr_mask[v] & rest
        while cand:
            bit = cand & -cand
            cand ^= bit
            out = max(out, 1 + solve(rest & ~bit))
        memo[mask] = out
        return out

    return solve((1 << g.n) - 1)


def maximum_matching(g: Graph) -> MatchingInfo:
    """Maximum matching size and whether it is perfect.

    Trees use a rooted dynamic program; other graphs fall back to an exact
    search over vertex subsets (``n <= 16``).
    """
    if g.n == 0:
        return MatchingInfo(0, True)
    size = _tree_matching(g) if is_tree(g) else _exhaustive_matching(g)
    return MatchingInfo(size, 2 * size == g.n)


def maximum_matching_size(g: Graph) -> int:
    return maximum_matching(g).size
