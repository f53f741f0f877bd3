"""Linearizations d0f = DA + alpha*I of degree-homogeneous linear couplings on trees."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .eigen import CLUSTER_TOL, Spectrum, eigenvalues
from .errors import MissingBeta
from .graph import Graph, is_tree, maximum_matching, require_tree

REAL_CASE = "real-case"
HERMITIAN_CASE = "hermitian-part-case"


class NonTreeWarning(UserWarning):
    """The linearization formula is stated for trees; other graphs are accepted as is."""


@dataclass(frozen=True)
class CouplingParams:
    alpha: float
    beta: Mapping[int, float] = field(default_factory=dict)

    def beta_for(self, d: int) -> float:
        if d not in self.beta:
            raise MissingBeta(f"no coupling coefficient for degree {d}")
        return float(self.beta[d])

    def diagonal(self, g: Graph) -> np.ndarray:
        return np.array([self.beta_for(d) for d in g.degrees], dtype=float)


def jacobian(g: Graph, p: CouplingParams) -> np.ndarray:
    """Entry (c, c) is alpha; entry (c, v) is beta_deg(c) when v ~ c."""
    if not is_tree(g):
        warnings.warn("jacobian of a non-tree network", NonTreeWarning, stacklevel=2)
    return p.diagonal(g)[:, None] * g.adjacency_matrix() + p.alpha * np.eye(g.n)


def coupling_matrix(g: Graph, p: CouplingParams) -> np.ndarray:
    """DA, the part of the linearization without the alpha shift."""
    return p.diagonal(g)[:, None] * g.adjacency_matrix()


def spectrum(g: Graph, p: CouplingParams, tol: float = CLUSTER_TOL) -> Spectrum:
    return eigenvalues(jacobian(g, p), tol=tol)


class AlphaBound(NamedTuple):
    bound: int
    perfect_matching: bool
    matching_size: int


def alpha_multiplicity_bound(g: Graph) -> AlphaBound:
    """alpha is an eigenvalue of d0f with multiplicity at least n - 2*nu."""
    require_tree(g)
    info = maximum_matching(g)
    return AlphaBound(max(g.n - 2 * info.size, 0), info.perfect, info.size)


def observed_alpha_multiplicity(g: Graph, p: CouplingParams, tol: float = CLUSTER_TOL) -> int:
    return spectrum(g, p, tol).multiplicity(p.alpha, tol)


def _pairs_with_negatives(values: list[complex], tol: float) -> bool:
    """Greedy check that the multiset equals its own negation."""
    pool = list(values)
    for z in values:
        target = -z
        best, best_d = -1, math.inf
        for i, w in enumerate(pool):
            d = abs(w - target)
            if d < best_d:
                best, best_d = i, d
        if best < 0 or best_d > tol * max(1.0, abs(z)):
            return False
        pool.pop(best)
    return True


def check_spectrum_symmetry(g: Graph, p: CouplingParams, tol: float = CLUSTER_TOL) -> bool:
    """The eigenvalues of DA come in pairs lambda, -lambda (trees are bipartite)."""
    require_tree(g)
    spec = eigenvalues(coupling_matrix(g, p), tol=tol)
    return _pairs_with_negatives(list(spec.eigenvalues), tol)


@dataclass(frozen=True)
class WeylBounds:
    lower: float
    upper: float
    mode: str
    contained: bool
    max_imag: float

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "mode": self.mode,
            "contained": self.contained,
            "max_imag": self.max_imag,
        }


def weyl_bounds(g: Graph, p: CouplingParams, tol: float = 1e-8) -> WeylBounds:
    """Interval bounds on the spectrum of d0f.

    With every beta positive, DA is similar to the symmetric D^1/2 A D^1/2, so
    the spectrum is real and lies between alpha plus its extreme eigenvalues.
    Otherwise the real parts are bounded through the symmetric part (DA + AD)/2.
    ``contained`` reports whether the computed spectrum respects the bound.
    """
    require_tree(g)
    d = p.diagonal(g)
    a = g.adjacency_matrix()
    if np.all(d > 0):
        mode = REAL_CASE
        root = np.sqrt(d)
        sym = root[:, None] * a * root[None, :]
    else:
        mode = HERMITIAN_CASE
        da = d[:, None] * a
        sym = 0.5 * (da + da.T)
    sym_spec = eigenvalues(sym, symmetric=True)
    re = [z.real for z in sym_spec.eigenvalues]
    lower = p.alpha + min(re)
    upper = p.alpha + max(re)
    spec = spectrum(g, p)
    slack = tol * max(1.0, abs(lower), abs(upper))
    contained = all(lower - slack <= z.real <= upper + slack for z in spec.eigenvalues)
    if mode == REAL_CASE:
        contained = contained and spec.max_imag < tol
    return WeylBounds(lower, upper, mode, contained, spec.max_imag)
