"""Permutations and automorphism groups.

General graphs use an individualization/refinement backtracking search; trees
use canonical forms rooted at the center, which is exact and linear-ish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

from .balanced import Coloring, canonical, refine
from .errors import SizeLimit
from .graph import Graph, is_tree

FULL_GROUP_MAX_N = 16
ASYMMETRY_MAX_N = 25


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                images[v] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        return Permutation(tuple(self.images[other.images[v]] for v in range(len(self))))

    def is_identity(self) -> bool:
        return all(i == v for v, i in enumerate(self.images))

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            v = self.images[start]
            while v != start:
                cyc.append(v)
                seen[v] = True
                v = self.images[v]
            out.append(cyc)
        return out

    def orbit_coloring(self) -> Coloring:
        """Orbit partition of the cyclic group generated by this permutation."""
        return orbit_coloring(len(self), [self])

    def is_automorphism(self, g: Graph) -> bool:
        if len(self) != g.n:
            return False
        im = self.images
        return all(g.has_edge(im[u], im[v]) for u, v in g.edges)

    def cycle_string(self, one_indexed: bool = True) -> str:
        off = 1 if one_indexed else 0
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(str(v + off) for v in c) + ")" for c in parts)


def orbit_coloring(n: int, generators: Iterable[Permutation]) -> Coloring:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in generators:
        for v, w in enumerate(p.images):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return canonical([find(v) for v in range(n)])


@dataclass
class AutomorphismGroup:
    generators: list[Permutation]
    order: int
    n: int = 0
    method: str = ""

    @property
    def is_asymmetric(self) -> bool:
        return self.order == 1

    def orbits(self) -> Coloring:
        return orbit_coloring(self.n, self.generators)


# --- individualization / refinement search ---------------------------------


def _individualize(base: Sequence[int], seq: Sequence[int]) -> list[int]:
    colors = list(base)
    top = max(colors, default=-1) + 1
    for k, v in enumerate(seq):
        colors[v] = top + k
    return colors


def _histogram(colors: Sequence[int]) -> list[int]:
    counts = [0] * (max(colors, default=-1) + 1)
    for c in colors:
        counts[c] += 1
    return counts


def _first_nonsingleton(colors: Sequence[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _find_isomorphism(g: Graph, base: Sequence[int], left: list[int], right: list[int]) -> Permutation | None:
    """An automorphism preserving ``base`` that maps ``left[i]`` to ``right[i]``."""
    lc = refine(g, _individualize(base, left))
    rc = refine(g, _individualize(base, right))
    if _histogram(lc) != _histogram(rc):
        return None
    cell = _first_nonsingleton(lc)
    if cell is None:
        where = {c: v for v, c in enumerate(rc)}
        perm = Permutation(tuple(where[c] for c in lc))
        return perm if perm.is_automorphism(g) else None
    u = cell[0]
    target = lc[u]
    for v in range(g.n):
        if rc[v] == target:
            found = _find_isomorphism(g, base, left + [u], right + [v])
            if found is not None:
                return found
    return None


def _search_group(g: Graph, colors: Sequence[int] | None, stop_at_first: bool) -> AutomorphismGroup:
    base = refine(g, colors if colors is not None else [0] * g.n)
    gens: list[Permutation] = []
    order = 1
    prefix: list[int] = []
    while True:
        cell = _first_nonsingleton(refine(g, _individualize(base, prefix)))
        if cell is None:
            break
        u = cell[0]
        level_gens: list[Permutation] = []
        orbit = {u}
        for v in cell[1:]:
            if v in orbit:
                continue
            perm = _find_isomorphism(g, base, prefix + [u], prefix + [v])
            if perm is None:
                continue
            level_gens.append(perm)
            gens.append(perm)
            if stop_at_first:
                return AutomorphismGroup(gens, 0, g.n, "search-early-exit")
            closure = orbit_coloring(g.n, level_gens)
            orbit = {w for w in range(g.n) if closure[w] == closure[u]}
        order *= len(orbit)
        prefix.append(u)
    return AutomorphismGroup(gens, order, g.n, "search")


# --- trees -------------------------------------------------------------------


def tree_center(g: Graph) -> list[int]:
    """The one or two central vertices, found by repeatedly stripping leaves."""
    deg = list(g.degrees)
    remaining = g.n
    layer = [v for v in range(g.n) if deg[v] <= 1]
    removed = [False] * g.n
    while remaining > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            remaining -= 1
            for w in g.adj[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(v for v in range(g.n) if not removed[v])


class _RootedForms:
    """Integer isomorphism-class labels for rooted subtrees."""

    def __init__(self, g: Graph):
        self.g = g
        self.table: dict[tuple[int, ...], int] = {}
        self.label: dict[tuple[int, int], int] = {}
        self.children: dict[tuple[int, int], list[int]] = {}

    def rooted(self, root: int, blocked: int = -1) -> int:
        """Label the subtree at ``root`` not crossing into ``blocked``."""
        g = self.g
        order = [(root, blocked)]
        for v, p in order:
            for w in g.adj[v]:
                if w != p:
                    order.append((w, v))
        for v, p in reversed(order):
            kids = [w for w in g.adj[v] if w != p]
            key = tuple(sorted(self.label[(w, v)] for w in kids))
            self.label[(v, p)] = self.table.setdefault(key, len(self.table))
            self.children[(v, p)] = kids
        return self.label[(root, blocked)]

    def sorted_children(self, v: int, p: int) -> list[int]:
        return sorted(self.children[(v, p)], key=lambda w: (self.label[(w, v)], w))

    def iso(self, a: int, pa: int, b: int, pb: int, images: list[int]) -> None:
        """Write the canonical isomorphism subtree(a) -> subtree(b) into ``images``."""
        stack = [(a, pa, b, pb)]
        while stack:
            x, px, y, py = stack.pop()
            images[x] = y
            for cx, cy in zip(self.sorted_children(x, px), self.sorted_children(y, py)):
                stack.append((cx, x, cy, y))


def _swap_subtrees(forms: _RootedForms, n: int, a: int, pa: int, b: int, pb: int) -> Permutation:
    images = list(range(n))
    forms.iso(a, pa, b, pb, images)
    forms.iso(b, pb, a, pa, images)
    return Permutation(tuple(images))


def _tree_group(g: Graph) -> AutomorphismGroup:
    n = g.n
    center = tree_center(g)
    forms = _RootedForms(g)
    gens: list[Permutation] = []
    order = 1
    if len(center) == 1:
        roots = [(center[0], -1)]
    else:
        c1, c2 = center
        roots = [(c1, c2), (c2, c1)]
    for r, p in roots:
        forms.rooted(r, p)
    if len(center) == 2 and forms.label[roots[0]] == forms.label[roots[1]]:
        order *= 2
        gens.append(_swap_subtrees(forms, n, c1, c2, c2, c1))
    for r, p in roots:
        stack = [(r, p)]
        while stack:
            v, pv = stack.pop()
            groups: dict[int, list[int]] = {}
            for w in forms.children[(v, pv)]:
                groups.setdefault(forms.label[(w, v)], []).append(w)
                stack.append((w, v))
            for members in groups.values():
                members.sort()
                order *= factorial(len(members))
                for x, y in zip(members, members[1:]):
                    gens.append(_swap_subtrees(forms, n, x, v, y, v))
    return AutomorphismGroup(gens, order, n, "tree-canonical")


def tree_canonical_form(g: Graph) -> tuple:
    """Isomorphism invariant of a free tree (equal iff isomorphic)."""

    def encode(v: int, p: int) -> str:
        kids = sorted(encode(w, v) for w in g.adj[v] if w != p)
        return "(" + "".join(kids) + ")"

    center = tree_center(g)
    if len(center) == 1:
        return (g.n, encode(center[0], -1))
    c1, c2 = center
    return (g.n,) + tuple(sorted((encode(c1, c2), encode(c2, c1))))


# --- public entry points -----------------------------------------------------


def automorphism_group(
    g: Graph,
    colors: Sequence[int] | None = None,
    method: str = "auto",
    max_n: int = FULL_GROUP_MAX_N,
) -> AutomorphismGroup:
    """Generators and exact order of Aut(g).

    With ``colors`` the result is the subgroup mapping every color class to
    itself. Trees without colors go through canonical forms; everything else
    through the backtracking search, limited to ``n <= max_n``.
    """
    if method == "auto":
        method = "tree" if colors is None and is_tree(g) else "search"
    if method == "tree":
        return _tree_group(g)
    if g.n > max_n:
        raise SizeLimit(f"automorphism search is limited to n <= {max_n} (got {g.n})")
    return _search_group(g, colors, stop_at_first=False)


def has_nontrivial_automorphism(g: Graph, max_n: int = ASYMMETRY_MAX_N) -> bool:
    """Early-exit symmetry test; stops at the first non-identity automorphism."""
    if is_tree(g):
        return _tree_group(g).order > 1
    if g.n > max_n:
        raise SizeLimit(f"asymmetry search is limited to n <= {max_n} (got {g.n})")
    return bool(_search_group(g, None, stop_at_first=True).generators)


def is_asymmetric(g: Graph, max_n: int = ASYMMETRY_MAX_N) -> bool:
    return not has_nontrivial_automorphism(g, max_n)
