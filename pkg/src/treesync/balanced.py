"""Balanced colorings of undirected simple graphs.

A coloring is a tuple ``col`` with ``col[v]`` the class index of vertex ``v``,
numbered by first occurrence (``col[0] == 0``). With one vertex type and one
undirected edge type, a coloring is balanced exactly when vertices of the same
class see the same multiset of neighbor colors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LengthMismatch, NotBalanced, NotSameClass, SizeLimit
from .graph import Graph, leaf_distance_multiset, require_tree, tree_path

Coloring = tuple[int, ...]

ENUMERATION_MAX_N = 12


def canonical(assignment: Sequence) -> Coloring:
    """Renumber arbitrary hashable labels by first occurrence."""
    relabel: dict = {}
    return tuple(relabel.setdefault(a, len(relabel)) for a in assignment)


def from_classes(n: int, classes: Iterable[Iterable[int]]) -> Coloring:
    """Build a coloring from explicit classes; unlisted vertices become singletons."""
    labels: list = [("solo", v) for v in range(n)]
    for k, members in enumerate(classes):
        for v in members:
            if not 0 <= v < n:
                raise LengthMismatch(f"vertex {v} outside 0..{n - 1}")
            labels[v] = ("class", k)
    return canonical(labels)


def classes_of(col: Sequence[int]) -> list[list[int]]:
    """Classes as ascending vertex lists, in class-index order."""
    col = canonical(col)
    out: list[list[int]] = [[] for _ in range(max(col, default=-1) + 1)]
    for v, k in enumerate(col):
        out[k].append(v)
    return out


def num_classes(col: Sequence[int]) -> int:
    return len(set(col))


def is_discrete(col: Sequence[int]) -> bool:
    return num_classes(col) == len(col)


def refines(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    """True iff every class of ``fine`` sits inside one class of ``coarse``."""
    image: dict[int, int] = {}
    return all(image.setdefault(f, c) == c for f, c in zip(fine, coarse))


def _check_length(g: Graph, col: Sequence[int]) -> None:
    if len(col) != g.n:
        raise LengthMismatch(f"coloring has length {len(col)} but graph has {g.n} vertices")


def neighbor_signature(g: Graph, col: Sequence[int], v: int) -> tuple[int, ...]:
    return tuple(sorted(col[w] for w in g.adj[v]))


@dataclass(frozen=True)
class BalanceCertificate:
    """Outcome of a balance check; ``witness`` is set only on failure.

    The witness is ``(c, d, sig_c, sig_d)``: two same-class vertices and their
    differing sorted neighbor-color lists.
    """

    verdict: bool
    witness: tuple[int, int, tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.verdict


def is_balanced(g: Graph, col: Sequence[int]) -> BalanceCertificate:
    _check_length(g, col)
    first: dict[int, tuple[int, tuple[int, ...]]] = {}
    for v in range(g.n):
        sig = neighbor_signature(g, col, v)
        k = col[v]
        if k not in first:
            first[k] = (v, sig)
        elif first[k][1] != sig:
            c, sig_c = first[k]
            return BalanceCertificate(False, (c, v, sig_c, sig))
    return BalanceCertificate(True)


def require_balanced(g: Graph, col: Sequence[int]) -> None:
    cert = is_balanced(g, col)
    if not cert:
        c, d, _, _ = cert.witness
        raise NotBalanced(f"vertices {c} and {d} share a class but see different neighbor colors")


def refine(g: Graph, colors: Sequence[int]) -> list[int]:
    """Coarsest equitable refinement of ``colors``.

    New color ids come from sorting (old color, neighbor colors) signatures,
    so the output is invariant under relabeling the graph: two isomorphic
    colored graphs refine to colorings that correspond under the isomorphism.
    """
    colors = list(colors)
    count = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ids[s] for s in sigs]
        if len(ids) == count:
            return new
        colors, count = new, len(ids)


def degree_partition(g: Graph) -> Coloring:
    return canonical(g.degrees)


def coarsest_balanced(g: Graph) -> Coloring:
    """The top of the lattice of balanced colorings of ``g``.

    Starts from the degree partition and splits classes by their
    neighbor-class multisets until nothing changes.
    """
    return canonical(refine(g, degree_partition(g)))


def enumerate_balanced(g: Graph, max_n: int = ENUMERATION_MAX_N) -> list[Coloring]:
    """Every balanced coloring of ``g``, by exhaustive backtracking.

    Only partitions refining the degree partition are visited, and a partial
    assignment is abandoned as soon as some vertex's assigned neighbors
    cannot fit the neighbor-color multiset already fixed for its class.
    Output is sorted by class count (most classes first), then by the
    canonical assignment vector.
    """
    n = g.n
    if n > max_n:
        raise SizeLimit(f"enumeration is limited to n <= {max_n} (got {n})")
    if n == 0:
        return [()]

    # BFS order keeps neighborhoods completing early, which makes pruning bite.
    order: list[int] = []
    placed = [False] * n
    for root in range(n):
        if placed[root]:
            continue
        placed[root] = True
        queue = [root]
        for x in queue:
            order.append(x)
            for w in g.adj[x]:
                if not placed[w]:
                    placed[w] = True
                    queue.append(w)

    deg = g.degrees
    assign = [-1] * n
    unassigned_nbrs = list(deg)
    partial: list[Counter] = [Counter() for _ in range(n)]
    class_deg: list[int] = []
    class_members: list[list[int]] = []
    # per class: fixed signature Counter and how many complete members vouch for it
    class_sig: list[Counter | None] = []
    class_sig_refs: list[int] = []
    found: list[Coloring] = []

    def fits(v: int) -> bool:
        sig = class_sig[assign[v]]
        if sig is None:
            return True
        part = partial[v]
        return all(sig[k] >= c for k, c in part.items())

    def complete(v: int) -> bool:
        return assign[v] >= 0 and unassigned_nbrs[v] == 0

    def record(v: int, undo: list) -> bool:
        # v just became complete; fix or check its class signature
        k = assign[v]
        sig = partial[v]
        if class_sig[k] is None:
            class_sig[k] = Counter(sig)
            class_sig_refs[k] = 1
            undo.append(("new", k))
            return all(fits(u) for u in class_members[k])
        if class_sig[k] != sig:
            return False
        class_sig_refs[k] += 1
        undo.append(("ref", k))
        return True

    def rollback(undo: list) -> None:
        for kind, k in reversed(undo):
            if kind == "new":
                class_sig[k] = None
                class_sig_refs[k] = 0
            else:
                class_sig_refs[k] -= 1

    def place(v: int, k: int) -> tuple[bool, list]:
        undo: list = []
        assign[v] = k
        class_members[k].append(v)
        for w in g.adj[v]:
            unassigned_nbrs[w] -= 1
            if assign[w] >= 0:
                partial[w][k] += 1
                partial[v][assign[w]] += 1
        ok = True
        touched = [v] + [w for w in g.adj[v] if assign[w] >= 0]
        for u in touched:
            if complete(u):
                if not record(u, undo):
                    ok = False
                    break
            elif not fits(u):
                ok = False
                break
        return ok, undo

    def unplace(v: int, undo: list) -> None:
        rollback(undo)
        k = assign[v]
        for w in g.adj[v]:
            unassigned_nbrs[w] += 1
            if assign[w] >= 0:
                partial[w][k] -= 1
                if partial[w][k] == 0:
                    del partial[w][k]
        partial[v].clear()
        class_members[k].pop()
        assign[v] = -1

    def search(i: int) -> None:
        if i == n:
            col = canonical(assign)
            if is_balanced(g, col):
                found.append(col)
            return
        v = order[i]
        for k in range(len(class_deg)):
            if class_deg[k] != deg[v]:
                continue
            ok, undo = place(v, k)
            if ok:
                search(i + 1)
            unplace(v, undo)
        # open a new class
        k = len(class_deg)
        class_deg.append(deg[v])
        class_members.append([])
        class_sig.append(None)
        class_sig_refs.append(0)
        ok, undo = place(v, k)
        if ok:
            search(i + 1)
        unplace(v, undo)
        class_deg.pop()
        class_members.pop()
        class_sig.pop()
        class_sig_refs.pop()

    search(0)
    found.sort(key=lambda c: (-num_classes(c), c))
    return found


# --- falsification harnesses for the structural laws on trees -------------


def _same_class_pairs(col: Sequence[int]):
    for members in classes_of(col):
        for i, c in enumerate(members):
            for d in members[i + 1:]:
                yield c, d


def check_reflected(g: Graph, col: Sequence[int], u: int, v: int) -> bool:
    """True iff the tree path from ``u`` to ``v`` reads the same colors both ways."""
    _check_length(g, col)
    if col[u] != col[v]:
        raise NotSameClass(f"vertices {u} and {v} are in different classes")
    path = tree_path(g, u, v)
    k = len(path) - 1
    return all(col[path[i]] == col[path[k - i]] for i in range(k + 1))


def check_all_reflected(g: Graph, col: Sequence[int]) -> bool:
    return all(check_reflected(g, col, c, d) for c, d in _same_class_pairs(col))


def check_leaf_multiset_law(g: Graph, col: Sequence[int]) -> bool:
    """Same-class vertices have equal multisets of distances to the leaves."""
    require_tree(g)
    require_balanced(g, col)
    cache: dict[int, tuple[int, ...]] = {}

    def ldm(v: int) -> tuple[int, ...]:
        if v not in cache:
            cache[v] = leaf_distance_multiset(g, v)
        return cache[v]

    return all(ldm(c) == ldm(d) for c, d in _same_class_pairs(col))


def check_no_vertex_middle(g: Graph, col: Sequence[int]) -> bool:
    """No interior vertex of a same-class path belongs to that class."""
    require_tree(g)
    require_balanced(g, col)
    for c, d in _same_class_pairs(col):
        if any(col[w] == col[c] for w in tree_path(g, c, d)[1:-1]):
            return False
    return True


def check_samecolorleaf(g: Graph, col: Sequence[int]) -> bool:
    """A non-discrete balanced coloring of a tree puts two leaves in one class."""
    require_tree(g)
    require_balanced(g, col)
    if is_discrete(col):
        return True
    leaf_colors = [col[l] for l in g.leaves()]
    return len(set(leaf_colors)) < len(leaf_colors)
