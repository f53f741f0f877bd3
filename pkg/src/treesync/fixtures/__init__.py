"""Named example networks, 0-indexed, plus their GraphFile copies on disk.

Vertex ``v_i`` of the figures is vertex ``i - 1`` here.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..graph import Graph

ASYMMETRIC7_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (4, 7), (5, 6)]
TREE10_EDGES = [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (4, 8), (5, 9), (6, 10)]
BINARY7_EDGES = [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]
FRUCHT_EDGES = [
    (1, 2), (1, 3), (1, 5), (2, 4), (2, 5), (3, 7), (3, 11), (4, 6), (4, 8),
    (5, 10), (6, 7), (6, 12), (7, 11), (8, 9), (8, 10), (9, 10), (9, 12), (11, 12),
]

# 1-indexed classes of the colorings drawn in the figures
TREE10_CLASSES = [[1, 2], [3, 4, 5, 6], [7, 8, 9, 10]]
FRUCHT_2_CLASSES = [[5, 6, 7, 10], [1, 2, 3, 4, 8, 9, 11, 12]]
FRUCHT_3_CLASSES = [[1, 4, 9, 11], [2, 3, 8, 12], [5, 6, 7, 10]]


def asymmetric7() -> Graph:
    return Graph.from_one_indexed(7, ASYMMETRIC7_EDGES)


def tree10() -> Graph:
    return Graph.from_one_indexed(10, TREE10_EDGES)


def binary7() -> Graph:
    return Graph.from_one_indexed(7, BINARY7_EDGES)


def frucht() -> Graph:
    return Graph.from_one_indexed(12, FRUCHT_EDGES)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(m: int) -> Graph:
    """K_{1,m} with center 0."""
    return Graph(m + 1, [(0, i) for i in range(1, m + 1)])


def zero_indexed(classes: list[list[int]]) -> list[list[int]]:
    return [[v - 1 for v in c] for c in classes]


FILES = {
    "asymmetric7": "asymmetric7.graph",
    "tree10": "tree10.graph",
    "binary7": "binary7.graph",
    "frucht": "frucht.graph",
    "path5": "path5.graph",
    "path4": "path4.graph",
    "path2": "path2.graph",
    "star3": "star3.graph",
}


def fixture_path(name: str) -> Path:
    """Filesystem path of a shipped fixture GraphFile."""
    ref = resources.files(__package__).joinpath(FILES[name])
    return Path(str(ref))
