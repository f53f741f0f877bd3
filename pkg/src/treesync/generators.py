"""Random and exhaustive graph generators."""

from __future__ import annotations

import heapq
import itertools
from typing import Iterator, Sequence

import numpy as np

from .automorphisms import tree_canonical_form
from .graph import Graph


def prufer_decode(seq: Sequence[int], n: int | None = None) -> Graph:
    """The labeled tree on ``len(seq) + 2`` vertices encoded by ``seq``."""
    n = len(seq) + 2 if n is None else n
    if n == 1:
        return Graph(1)
    if len(seq) != n - 2:
        raise ValueError(f"a Prufer sequence for {n} vertices has length {n - 2}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return Graph(n, edges)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labeled tree on ``n`` vertices."""
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    return prufer_decode([int(x) for x in rng.integers(0, n, size=n - 2)])


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p): each of the n(n-1)/2 pairs present independently with probability p."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def unlabeled_trees(n: int) -> list[Graph]:
    """One representative per isomorphism class of trees on ``n`` vertices.

    Walks every Prufer sequence and keeps the first tree of each canonical form,
    so this is meant for small orders (n^(n-2) decodes).
    """
    if n <= 0:
        return []
    if n <= 2:
        return [prufer_decode([], n)]
    seen: dict[tuple, Graph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        g = prufer_decode(seq)
        seen.setdefault(tree_canonical_form(g), g)
    return sorted(seen.values(), key=lambda g: tree_canonical_form(g))


def trees_up_to(order: int) -> Iterator[Graph]:
    for n in range(1, order + 1):
        yield from unlabeled_trees(n)
