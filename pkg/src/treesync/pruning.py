"""Leaf pruning of trees and realization of tree colorings by automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automorphisms import Permutation, automorphism_group
from .balanced import Coloring, canonical, classes_of, is_discrete, require_balanced, _check_length
from .errors import ConstructionError, IndexOutOfRange, SizeLimit
from .graph import Graph, is_tree, require_tree

FIXED_POINT = "FixedPoint"
EXOTIC = "Exotic"
TRIVIAL = "Trivial"


@dataclass(frozen=True)
class PruningTrace:
    """``layers[i]`` holds the leaves of G^i; ``survivors`` is V(G^s)."""

    n: int
    layers: tuple[tuple[int, ...], ...]
    survivors: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    def vertices(self, i: int) -> list[int]:
        """Vertex set of G^i, ascending."""
        if not 0 <= i <= self.depth:
            raise IndexOutOfRange(f"pruning level {i} outside 0..{self.depth}")
        out = list(self.survivors)
        for layer in self.layers[i:]:
            out.extend(layer)
        return sorted(out)

    def level_of(self) -> list[int]:
        """Per vertex, the index of the layer it is removed in (depth for survivors)."""
        level = [self.depth] * self.n
        for i, layer in enumerate(self.layers):
            for v in layer:
                level[v] = i
        return level


def pruning_sequence(g: Graph) -> PruningTrace:
    """Strip all leaves at once, repeatedly, until at most two vertices remain."""
    require_tree(g)
    alive = set(range(g.n))
    deg = list(g.degrees)
    layers = []
    while len(alive) > 2:
        leaves = sorted(v for v in alive if deg[v] <= 1)
        for v in leaves:
            alive.discard(v)
            for w in g.adj[v]:
                if w in alive:
                    deg[w] -= 1
        layers.append(tuple(leaves))
    return PruningTrace(g.n, tuple(layers), tuple(sorted(alive)))


def restrict_coloring(g: Graph, col: Sequence[int], trace: PruningTrace, i: int) -> tuple[list[int], Coloring]:
    """Restriction of ``col`` to G^i.

    Returns the ascending vertex list of G^i and the restricted coloring,
    indexed by position in that list and renumbered canonically.
    """
    _check_length(g, col)
    require_balanced(g, col)
    verts = trace.vertices(i)
    return verts, canonical([col[v] for v in verts])


def _layer_colorings(col: Sequence[int], trace: PruningTrace) -> list[bool]:
    """``out[i]`` is True when the restriction to G^i is discrete."""
    out = []
    for i in range(trace.depth + 1):
        seen = set()
        discrete = True
        for v in trace.vertices(i):
            if col[v] in seen:
                discrete = False
                break
            seen.add(col[v])
        out.append(discrete)
    return out


def realize_tree_coloring(g: Graph, col: Sequence[int]) -> Permutation:
    """A single automorphism whose cyclic group has ``col`` as orbit partition.

    Start from the first pruning level on which ``col`` is discrete, with the
    identity there (or from the swap of the two survivors when they share a
    class). Then walk outwards one layer at a time. Every class K in a layer
    hangs below one class B, which is already a single cycle b_1 .. b_q of the
    map built so far, and each b_j has the same number a of children in K.
    K becomes the cycle child_0(b_1) .. child_0(b_q) child_1(b_1) .. child_{a-1}(b_q),
    children of a parent taken in ascending order, so phi maps
    child_t(b_j) to child_t(b_{j+1}) and wraps to child_{t+1}(b_1).
    """
    require_tree(g)
    _check_length(g, col)
    require_balanced(g, col)
    n = g.n
    col = canonical(col)
    if is_discrete(col):
        return Permutation.identity(n)

    trace = pruning_sequence(g)
    level = trace.level_of()
    discrete = _layer_colorings(col, trace)
    images = list(range(n))
    if discrete[trace.depth]:
        start = min(i for i in range(trace.depth + 1) if discrete[i])
    else:
        a, b = trace.survivors
        images[a], images[b] = b, a
        start = trace.depth

    members = classes_of(col)
    for i in range(start - 1, -1, -1):
        layer_classes = sorted({col[v] for v in trace.layers[i]})
        for k in layer_classes:
            klass = members[k]
            if any(level[v] != i for v in klass):
                raise ConstructionError(f"class {k} is not contained in pruning layer {i}")
            parent = {}
            for v in klass:
                ups = [w for w in g.adj[v] if level[w] > i]
                if len(ups) != 1:
                    raise ConstructionError(f"vertex {v} is not a leaf of G^{i}")
                parent[v] = ups[0]
            parent_classes = {col[p] for p in parent.values()}
            if len(parent_classes) != 1:
                raise ConstructionError(f"class {k} hangs below several classes")
            block = members[parent_classes.pop()]
            # order the parent class along its cycle under phi
            cycle = [min(block)]
            while True:
                nxt = images[cycle[-1]]
                if nxt == cycle[0]:
                    break
                cycle.append(nxt)
            if sorted(cycle) != sorted(block):
                raise ConstructionError(f"parent class of class {k} is not a single cycle")
            kids = {b: sorted(v for v in klass if parent[v] == b) for b in cycle}
            counts = {len(c) for c in kids.values()}
            if len(counts) != 1:
                raise ConstructionError(f"parents of class {k} have unequal child counts")
            a = counts.pop()
            order = [kids[b][t] for t in range(a) for b in cycle]
            for x, y in zip(order, order[1:] + order[:1]):
                images[x] = y

    phi = Permutation(tuple(images))
    if not phi.is_automorphism(g):
        raise ConstructionError("constructed map is not an automorphism")
    if phi.orbit_coloring() != col:
        raise ConstructionError("orbits of the constructed map differ from the coloring")
    return phi


@dataclass(frozen=True)
class Classification:
    kind: str
    realizer: Permutation | None = None
    group_orbits: Coloring | None = None
    group_order: int | None = None


def classify_coloring(g: Graph, col: Sequence[int], max_n: int = 16) -> Classification:
    """Trivial, FixedPoint or Exotic.

    On trees the realizer comes from :func:`realize_tree_coloring`. Otherwise
    the class-preserving subgroup of Aut(g) is computed; the coloring is a
    fixed-point coloring exactly when that subgroup's orbits are its classes.
    """
    _check_length(g, col)
    require_balanced(g, col)
    col = canonical(col)
    if is_discrete(col):
        return Classification(TRIVIAL, Permutation.identity(g.n), col)
    if is_tree(g):
        phi = realize_tree_coloring(g, col)
        return Classification(FIXED_POINT, phi, phi.orbit_coloring())
    if g.n > max_n:
        raise SizeLimit(f"classification of non-tree colorings is limited to n <= {max_n} (got {g.n})")
    group = automorphism_group(g, colors=col, max_n=max_n)
    orbits = group.orbits()
    kind = FIXED_POINT if orbits == col else EXOTIC
    return Classification(kind, None, orbits, group.order)


def check_adjacent_class_law(g: Graph, col: Sequence[int]) -> bool:
    """Adjacent same-class vertices form their whole class and survive pruning."""
    require_tree(g)
    require_balanced(g, col)
    trace = pruning_sequence(g)
    members = classes_of(col)
    col = canonical(col)
    for u, v in g.edges:
        if col[u] == col[v]:
            if members[col[u]] != [u, v] or trace.survivors != (u, v):
                return False
    return True


def check_class_leaf_layers(g: Graph, col: Sequence[int]) -> bool:
    """Every class lies in one pruning layer or is contained in the survivors."""
    require_tree(g)
    require_balanced(g, col)
    level = pruning_sequence(g).level_of()
    return all(len({level[v] for v in klass}) == 1 for klass in classes_of(col))
