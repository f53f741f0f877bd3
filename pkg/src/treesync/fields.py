"""Admissible vector fields with one-dimensional cells.

A field assigns each degree ``d`` a function ``F_d(own, neighbors)`` with
``neighbors`` a tuple of ``d`` values. Vertices of equal degree share ``F_d``,
and the neighbor tuple is sorted by value before the call, so any field built
here is invariant under permuting neighbors. Degree-1 components double as the
leaf coupling ``h(own, center)``.

Components only use ``+ - *``, :func:`exp` and :func:`tanh`, so they run on
floats and on gmpy2 ``mpfr`` numbers alike (see ``integrate``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import gmpy2
import numpy as np

from .errors import MissingDegree, NotAdmissible
from .graph import Graph
from .spectral import CouplingParams

Component = Callable[[object, tuple], object]

_MPFR = type(gmpy2.mpfr(0))


def exp(x):
    return gmpy2.exp(x) if isinstance(x, _MPFR) else math.exp(x)


def tanh(x):
    return gmpy2.tanh(x) if isinstance(x, _MPFR) else math.tanh(x)


@dataclass(frozen=True)
class FieldSpec:
    """Per-degree components; ``default`` serves every degree not listed."""

    name: str
    components: Mapping[int, Component]
    default: Component | None = None
    leaf_partial: Callable[[float, float], float] | None = None
    params: Mapping[str, float] = field(default_factory=dict)

    def component(self, d: int) -> Component:
        if d in self.components:
            return self.components[d]
        if self.default is not None:
            return self.default
        raise MissingDegree(f"field '{self.name}' has no component for degree {d}")

    def covers(self, g: Graph) -> bool:
        try:
            for d in set(g.degrees):
                self.component(d)
        except MissingDegree:
            return False
        return True

    def leaf_coupling(self) -> Component:
        return self.component(1)


def evaluate_list(g: Graph, f: FieldSpec, x: Sequence) -> list:
    comps = [f.component(d) for d in g.degrees]
    return [comps[c](x[c], tuple(sorted(x[w] for w in g.adj[c]))) for c in range(g.n)]


def evaluate_field(g: Graph, f: FieldSpec, x: Sequence[float]) -> np.ndarray:
    """Component ``c`` is ``F_deg(c)(x_c, neighbor values)``."""
    if len(x) != g.n:
        raise ValueError(f"state has length {len(x)} but graph has {g.n} vertices")
    return np.array(evaluate_list(g, f, [float(v) for v in x]), dtype=float)


def leaf_partial_fd(f: FieldSpec, a, b):
    """Central difference for the first partial of the leaf coupling at (a, b)."""
    h1 = f.leaf_coupling()
    step = 1e-6 * max(1.0, abs(a))
    return (h1(a + step, (b,)) - h1(a - step, (b,))) / (2 * step)


def check_admissible(
    f: FieldSpec,
    degrees: Sequence[int],
    rng: np.random.Generator | None = None,
    trials: int = 100,
    tol: float = 1e-12,
    scale: float = 2.0,
) -> bool:
    """Randomized test that each raw component ignores the order of its neighbors."""
    rng = np.random.default_rng(0) if rng is None else rng
    for d in sorted(set(degrees)):
        comp = f.component(d)
        for _ in range(trials):
            own = float(rng.uniform(-scale, scale))
            nbrs = rng.uniform(-scale, scale, size=d)
            ref = comp(own, tuple(float(v) for v in nbrs))
            perm = rng.permutation(d)
            out = comp(own, tuple(float(v) for v in nbrs[perm]))
            if not abs(out - ref) <= tol * max(1.0, abs(ref)):
                return False
    return True


def require_admissible(f: FieldSpec, degrees: Sequence[int], **kw) -> None:
    if not check_admissible(f, degrees, **kw):
        raise NotAdmissible(f"field '{f.name}' depends on the order of neighbor arguments")


# --- built-in fields ---------------------------------------------------------


def linear_field(p: CouplingParams) -> FieldSpec:
    """F_d(o, N) = alpha*o + beta_d * sum(N); its Jacobian is DA + alpha*I."""
    alpha = p.alpha
    comps = {}
    for d, b in p.beta.items():
        comps[int(d)] = (lambda o, nb, b=float(b): alpha * o + b * sum(nb))
    params = {"alpha": alpha, **{f"beta{d}": float(b) for d, b in p.beta.items()}}
    return FieldSpec("linear", comps, None, lambda a, b: alpha, params)


def _leaf_decay(o, nb):
    c = nb[0]
    return -o * (1 + exp(-(c * c)))


def _hub_square(o, nb):
    s = sum(nb)
    return o * (s * s)


def _branch_tanh(o, nb):
    return o * tanh(sum(v * v for v in nb))


def example_nonlinear() -> FieldSpec:
    """The nonlinear field on the order-7 binary tree, written per degree.

    Leaves: -x(1 + e^{-c^2}) with c the center; the root (degree 2):
    x(sum of neighbors)^2; degree-3 vertices: x tanh(sum of squared neighbors).
    Usable on any tree with maximum degree 3.
    """
    return FieldSpec(
        "example-nonlinear",
        {1: _leaf_decay, 2: _hub_square, 3: _branch_tanh},
        None,
        lambda a, b: -1.0 - math.exp(-b * b),
    )


def contracting_leaf(kappa: float = 1.0) -> FieldSpec:
    """Leaves: -kappa*x(1 + e^{-c^2}); others: -x + tanh(sum of neighbors).

    The leaf partial is -kappa(1 + e^{-b^2}) < -kappa everywhere.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    k = float(kappa)

    def leaf(o, nb):
        c = nb[0]
        return -k * o * (1 + exp(-(c * c)))

    def other(o, nb):
        return -o + tanh(sum(nb))

    return FieldSpec(
        "contracting-leaf",
        {1: leaf},
        other,
        lambda a, b: -k * (1.0 + math.exp(-b * b)),
        {"kappa": k},
    )


def zero_field() -> FieldSpec:
    return FieldSpec("zero", {}, lambda o, nb: 0 * o, lambda a, b: 0.0)


BUILTIN_NAMES = ("linear", "example-nonlinear", "contracting-leaf", "zero")
