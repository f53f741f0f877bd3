"""Balanced colorings, symmetry and synchrony dynamics on tree networks."""

from __future__ import annotations

from .automorphisms import AutomorphismGroup, Permutation, automorphism_group, is_asymmetric
from .balanced import (
    coarsest_balanced,
    enumerate_balanced,
    from_classes,
    is_balanced,
)
from .cherries import (
    Cherry,
    CherryPack,
    cherry_jacobian_check,
    cherry_subspace_basis,
    find_cherries,
    lyapunov_decay_test,
)
from .fields import FieldSpec, contracting_leaf, evaluate_field, example_nonlinear, linear_field
from .graph import Graph, is_tree, leaf_distance_multiset, maximum_matching_size, tree_path
from .integrate import Trajectory, integrate
from .io import VERSION as __version__
from .pruning import Classification, PruningTrace, classify_coloring, pruning_sequence, realize_tree_coloring
from .quotient import QuotientNetwork, quotient_network, undirected_simplification
from .spectral import CouplingParams, alpha_multiplicity_bound, jacobian, weyl_bounds
