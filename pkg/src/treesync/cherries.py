"""Cherries, their synchrony subspaces, and numerical checks of leaf synchrony.

An m-cherry is a set of m >= 2 leaves sharing a neighbor (the center). Merging
the leaves of each cherry of a pack gives a balanced coloring whose
polydiagonal is called Delta below; W is its orthogonal complement, spanned by
the differences e_l1 - e_li.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .automorphisms import tree_canonical_form
from .balanced import Coloring, canonical, classes_of, from_classes
from .eigen import eigenvalues
from .errors import InvalidPack, NotOnSubspace, PartialViolation, RateViolation
from .fields import (
    FieldSpec,
    contracting_leaf,
    evaluate_list,
    example_nonlinear,
    leaf_partial_fd,
    linear_field,
    require_admissible,
)
from .fixtures import binary7
from .graph import Graph, is_tree
from .integrate import Trajectory, integrate
from .spectral import CouplingParams

SUBSPACE_TOL = 1e-10


@dataclass(frozen=True)
class Cherry:
    center: int
    leaves: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.leaves)

    def to_dict(self, one_indexed: bool = True) -> dict:
        off = 1 if one_indexed else 0
        return {"center": self.center + off, "leaves": [l + off for l in self.leaves]}


def find_cherries(g: Graph) -> list[Cherry]:
    """For each vertex with two or more pendant neighbors, the maximal cherry."""
    out = []
    for w in range(g.n):
        pend = [v for v in g.adj[w] if g.degree(v) == 1]
        # in K_2 each end is a pendant neighbor of the other; neither is a cherry
        if len(pend) >= 2:
            out.append(Cherry(w, tuple(pend)))
    return out


@dataclass(frozen=True)
class CherryPack:
    cherries: tuple[Cherry, ...]

    @classmethod
    def of(cls, g: Graph, spec: Iterable[tuple[int, Sequence[int]]]) -> "CherryPack":
        pack = cls(tuple(Cherry(int(c), tuple(sorted(int(l) for l in ls))) for c, ls in spec))
        pack.validate(g)
        return pack

    @classmethod
    def from_leaf_sets(cls, g: Graph, leaf_sets: Iterable[Sequence[int]]) -> "CherryPack":
        """Build a pack from leaf sets alone, reading each center off the graph."""
        cherries = []
        for ls in leaf_sets:
            ls = sorted(int(l) for l in ls)
            if not ls or not all(0 <= l < g.n for l in ls):
                raise InvalidPack(f"leaf set {ls} is empty or out of range")
            centers = {w for l in ls for w in g.adj[l]}
            if len(centers) != 1:
                raise InvalidPack(f"leaves {ls} do not share a single neighbor")
            cherries.append(Cherry(centers.pop(), tuple(ls)))
        pack = cls(tuple(cherries))
        pack.validate(g)
        return pack

    def validate(self, g: Graph) -> None:
        used: set[int] = set()
        if not self.cherries:
            raise InvalidPack("a pack needs at least one cherry")
        for ch in self.cherries:
            if not 0 <= ch.center < g.n:
                raise InvalidPack(f"center {ch.center} out of range")
            if ch.m < 2:
                raise InvalidPack(f"cherry at {ch.center} has fewer than two leaves")
            for l in ch.leaves:
                if not 0 <= l < g.n or g.degree(l) != 1 or not g.has_edge(l, ch.center):
                    raise InvalidPack(f"vertex {l} is not a leaf attached to {ch.center}")
                if l in used:
                    raise InvalidPack(f"leaf {l} appears in two cherries")
                used.add(l)

    def coloring(self, n: int) -> Coloring:
        return from_classes(n, [ch.leaves for ch in self.cherries])

    def to_list(self, one_indexed: bool = True) -> list[dict]:
        return [ch.to_dict(one_indexed) for ch in self.cherries]


def cherry_subspace_basis(g: Graph, pack: CherryPack) -> tuple[np.ndarray, np.ndarray]:
    """Rows spanning Delta (class indicators) and W (leaf differences).

    The two row spaces are orthogonal and together span R^n.
    """
    pack.validate(g)
    delta = []
    for klass in classes_of(pack.coloring(g.n)):
        row = np.zeros(g.n)
        row[klass] = 1.0
        delta.append(row)
    w = []
    for ch in pack.cherries:
        l1 = ch.leaves[0]
        for li in ch.leaves[1:]:
            row = np.zeros(g.n)
            row[l1], row[li] = 1.0, -1.0
            w.append(row)
    return np.array(delta).reshape(-1, g.n), np.array(w).reshape(-1, g.n)


def subspace_deviation(x: Sequence, col: Sequence[int]) -> float:
    """Largest spread (max - min) of coordinates inside one class."""
    lo: dict[int, object] = {}
    hi: dict[int, object] = {}
    for v, k in enumerate(col):
        xv = x[v]
        if k not in lo:
            lo[k] = hi[k] = xv
        else:
            lo[k] = min(lo[k], xv)
            hi[k] = max(hi[k], xv)
    return max((float(hi[k] - lo[k]) for k in lo), default=0.0)


def random_ball_point(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the closed Euclidean ball of the given radius."""
    if n == 0:
        return np.zeros(0)
    d = rng.normal(size=n)
    norm = np.linalg.norm(d)
    while norm == 0:
        d = rng.normal(size=n)
        norm = np.linalg.norm(d)
    return d / norm * radius * rng.random() ** (1.0 / n)


def project_to_polydiagonal(x: Sequence[float], col: Sequence[int]) -> np.ndarray:
    """Replace every coordinate by the mean of its class."""
    x = np.asarray(x, dtype=float)
    out = x.copy()
    for klass in classes_of(col):
        out[klass] = x[klass].mean()
    return out


# --- Jacobian on Delta ---------------------------------------------------------


def fd_jacobian(g: Graph, f: FieldSpec, x: Sequence[float]) -> np.ndarray:
    x = [float(v) for v in x]
    jac = np.zeros((g.n, g.n))
    for j in range(g.n):
        h = 1e-6 * max(1.0, abs(x[j]))
        up = list(x)
        dn = list(x)
        up[j] += h
        dn[j] -= h
        jac[:, j] = (np.array(evaluate_list(g, f, up)) - np.array(evaluate_list(g, f, dn))) / (2 * h)
    return jac


@dataclass
class CherryEigenReport:
    cherry: Cherry
    eigenvalue: float
    partial_fd: float
    partial_analytic: float | None
    invariance_residual: float
    multiplicity: int
    ok: bool

    def to_dict(self) -> dict:
        return {
            "cherry": self.cherry.to_dict(),
            "eigenvalue": self.eigenvalue,
            "partial_fd": self.partial_fd,
            "partial_analytic": self.partial_analytic,
            "invariance_residual": self.invariance_residual,
            "multiplicity": self.multiplicity,
            "required_multiplicity": self.cherry.m - 1,
            "ok": self.ok,
        }


def cherry_jacobian_check(
    g: Graph,
    f: FieldSpec,
    pack: CherryPack,
    omega: Sequence[float],
    rel_tol: float = 1e-5,
) -> list[CherryEigenReport]:
    """Check each leaf-difference direction is an eigenvector of d_omega f.

    The eigenvalue must equal the leaf partial at (omega_l1, omega_center) and
    appear at least m - 1 times in the spectrum of the Jacobian.
    """
    pack.validate(g)
    omega = [float(v) for v in omega]
    col = pack.coloring(g.n)
    if subspace_deviation(omega, col) > SUBSPACE_TOL:
        raise NotOnSubspace("omega is not on the cherry polydiagonal")
    require_admissible(f, list(set(g.degrees)))
    jac = fd_jacobian(g, f, omega)
    spec = eigenvalues(jac, symmetric=False)
    reports = []
    for ch in pack.cherries:
        l1 = ch.leaves[0]
        part = float(leaf_partial_fd(f, omega[l1], omega[ch.center]))
        analytic = f.leaf_partial(omega[l1], omega[ch.center]) if f.leaf_partial else None
        lam = None
        residual = 0.0
        for li in ch.leaves[1:]:
            u = np.zeros(g.n)
            u[l1], u[li] = 1.0, -1.0
            ju = jac @ u
            rq = float(u @ ju / (u @ u))
            residual = max(residual, float(np.linalg.norm(ju - rq * u)))
            lam = rq if lam is None else lam
        mult = spec.multiplicity(lam, 1e-7)
        ok = (
            residual < 1e-6
            and abs(lam - part) <= rel_tol * max(abs(part), 1e-12)
            and mult >= ch.m - 1
        )
        reports.append(CherryEigenReport(ch, lam, part, analytic, residual, mult, ok))
    return reports


# --- Lyapunov decay --------------------------------------------------------------


def lyapunov_value(x: Sequence, pack: CherryPack) -> float:
    """Squared distance to Delta summed over cherries: sum (x_l1 - x_li)^2 / 2."""
    total = 0
    for ch in pack.cherries:
        a = x[ch.leaves[0]]
        for li in ch.leaves[1:]:
            d = a - x[li]
            total = total + d * d / 2
    return float(total)


def fitted_rate(times: Sequence[float], values: Sequence[float]) -> float | None:
    """Least-squares slope of log V against t over the positive samples."""
    pts = [(t, math.log(v)) for t, v in zip(times, values) if v > 0 and math.isfinite(v)]
    if len(pts) < 2:
        return None
    t = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    tc = t - t.mean()
    denom = float(tc @ tc)
    if denom == 0:
        return None
    return float(tc @ (y - y.mean()) / denom)


@dataclass
class DecayReport:
    times: list[float]
    values: list[float]
    bound_rate: float
    fitted_rate: float | None
    max_ratio: float
    passed: bool
    arithmetic: str
    partial_max: float
    trajectory: Trajectory | None = field(default=None, repr=False)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self, samples: int = 101) -> dict:
        idx = np.unique(np.linspace(0, len(self.times) - 1, min(samples, len(self.times))).astype(int))
        return {
            "verdict": self.verdict,
            "bound_rate": self.bound_rate,
            "fitted_rate": self.fitted_rate,
            "max_ratio": self.max_ratio,
            "partial_max": self.partial_max,
            "arithmetic": self.arithmetic,
            "t": [self.times[i] for i in idx],
            "V": [self.values[i] for i in idx],
        }


def spot_check_partial(
    f: FieldSpec,
    points: Iterable[tuple],
    N: float,
    slack: float = 1e-6,
) -> float:
    """Largest leaf partial over the given (a, b) points; raises if any reaches N.

    A strict inequality cannot be verified in floating point (for instance
    -1 - e^{-b^2} rounds to -1 once |b| > 6), so values up to N plus a small
    relative slack are accepted.
    """
    worst = -math.inf
    for a, b in points:
        val = float(leaf_partial_fd(f, a, b))
        worst = max(worst, val)
        if not val <= N + slack * max(1.0, abs(N)):
            raise PartialViolation(f"leaf partial {val:.6g} at ({float(a):.4g}, {float(b):.4g}) is not below {N}")
    return worst


def lyapunov_decay_test(
    g: Graph,
    f: FieldSpec,
    pack: CherryPack,
    x0: Sequence[float],
    t_end: float,
    N: float,
    dt: float = 1e-3,
    rtol: float = 1e-6,
    arithmetic: str = "auto",
    rng: np.random.Generator | None = None,
    strict: bool = True,
    probe_radius: float = 10.0,
) -> DecayReport:
    """Integrate from ``x0`` and compare V(t) with V(0) e^{2Nt}.

    V(t) <= V(0) e^{2Nt} (1 + rtol) must hold at every sample; with V(0) = 0
    the trajectory must stay on Delta (V <= 1e-12). The leaf partial is
    spot-checked below N along the trajectory and at random points first.
    """
    if not N < 0:
        raise ValueError("the rate bound N must be negative")
    pack.validate(g)
    rng = np.random.default_rng(0) if rng is None else rng
    probes = [tuple(p) for p in rng.uniform(-probe_radius, probe_radius, size=(50, 2))]
    partial_max = spot_check_partial(f, probes, N)
    traj = integrate(g, f, x0, t_end, dt, arithmetic=arithmetic)
    stride = max(1, len(traj) // 50)
    on_path = [(s[ch.leaves[0]], s[ch.center]) for s in traj.states[::stride] for ch in pack.cherries]
    partial_max = max(partial_max, spot_check_partial(f, on_path, N))

    values = [lyapunov_value(s, pack) for s in traj.states]
    v0 = values[0]
    if v0 == 0:
        max_ratio = max(values)
        passed = max_ratio <= 1e-12
    else:
        ratios = [v / (v0 * math.exp(2 * N * t)) for t, v in zip(traj.times, values)]
        max_ratio = max(ratios)
        passed = max_ratio <= 1 + rtol
    report = DecayReport(
        list(traj.times), values, 2 * N, fitted_rate(traj.times, values),
        max_ratio, passed, traj.arithmetic, partial_max, traj,
    )
    if strict and not passed:
        raise RateViolation(f"V exceeded V(0)e^(2Nt) by a factor {max_ratio:.6g}")
    return report


# --- flow invariance ---------------------------------------------------------------


def flow_invariance_deviation(
    g: Graph,
    f: FieldSpec,
    col: Sequence[int],
    x0: Sequence[float],
    t_end: float = 5.0,
    dt: float = 0.01,
    arithmetic: str = "auto",
) -> float:
    """Largest in-class spread along the trajectory started at ``x0``."""
    traj = integrate(g, f, x0, t_end, dt, arithmetic=arithmetic)
    return max(subspace_deviation(s, col) for s in traj.states)


def random_polydiagonal_point(col: Sequence[int], rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    col = canonical(col)
    vals = rng.uniform(-scale, scale, size=max(col, default=-1) + 1)
    return np.array([vals[k] for k in col])


def builtin_fields(g: Graph) -> list[FieldSpec]:
    """Built-in admissible fields applicable to ``g``.

    The linear one uses beta_k = 1 + k/10 so that k * beta_k differs across
    degrees, which separates vertices of different degree at first order.
    The example nonlinear field is only included on the order-7 binary tree
    it was written for; on other trees adjacent degree-2 cells can blow up in
    finite time.
    """
    degrees = sorted(set(g.degrees))
    out = [linear_field(CouplingParams(-0.3, {d: 1.0 + 0.1 * d for d in degrees}))]
    out.append(contracting_leaf(1.0))
    if is_tree(g) and g.n == 7 and tree_canonical_form(g) == tree_canonical_form(binary7()):
        out.append(example_nonlinear())
    return out


def non_invariance_witness(
    g: Graph,
    col: Sequence[int],
    fields: Sequence[FieldSpec] | None = None,
    seeds: Sequence[int] = (0, 1, 2),
    t_end: float = 1.0,
    dt: float = 0.01,
    threshold: float = 1e-3,
) -> tuple[str, float] | None:
    """A built-in field pushing a Delta-started trajectory off Delta by ``threshold``."""
    fields = builtin_fields(g) if fields is None else fields
    for f in fields:
        for s in seeds:
            x0 = random_polydiagonal_point(col, np.random.default_rng(s))
            dev = flow_invariance_deviation(g, f, col, x0, t_end, dt)
            if dev >= threshold:
                return f.name, dev
    return None
