"""Acceptance criteria; run with ``pytest tests/test_acceptance.py -s -v`` to see the verdict lines."""

from __future__ import annotations

import json
import math
import time

import numpy as np

from conftest import brute_matching, set_partitions, spectrum_gap
from treesync.automorphisms import automorphism_group
from treesync.balanced import (
    canonical,
    check_all_reflected,
    check_leaf_multiset_law,
    check_no_vertex_middle,
    check_samecolorleaf,
    enumerate_balanced,
    from_classes,
    is_balanced,
)
from treesync.cherries import (
    CherryPack,
    builtin_fields,
    cherry_jacobian_check,
    flow_invariance_deviation,
    lyapunov_decay_test,
    non_invariance_witness,
    random_ball_point,
    random_polydiagonal_point,
)
from treesync.cli import main
from treesync.fields import contracting_leaf, example_nonlinear, linear_field
from treesync.fixtures import (
    FRUCHT_2_CLASSES,
    FRUCHT_3_CLASSES,
    asymmetric7,
    binary7,
    frucht,
    path,
    star,
    tree10,
    zero_indexed,
)
from treesync.generators import random_tree, trees_up_to
from treesync.integrate import integrate
from treesync.pruning import EXOTIC, FIXED_POINT, TRIVIAL, check_adjacent_class_law, classify_coloring
from treesync.quotient import check_quotient_tree_law
from treesync.spectral import (
    CouplingParams,
    alpha_multiplicity_bound,
    check_spectrum_symmetry,
    observed_alpha_multiplicity,
    spectrum,
    weyl_bounds,
)


def verdict(k: int, ok: bool, detail: str) -> None:
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


_SWEEP = None


def sweep():
    """Every unlabeled tree of order <= 8 with its balanced colorings."""
    global _SWEEP
    if _SWEEP is None:
        _SWEEP = [(g, enumerate_balanced(g)) for g in trees_up_to(8)]
    return _SWEEP


def test_criterion_1_frucht():
    t0 = time.perf_counter()
    f = frucht()
    order = automorphism_group(f).order
    kinds = []
    balanced = []
    for classes in (FRUCHT_2_CLASSES, FRUCHT_3_CLASSES):
        col = from_classes(12, zero_indexed(classes))
        balanced.append(bool(is_balanced(f, col)))
        kinds.append(classify_coloring(f, col).kind)
    dt = time.perf_counter() - t0
    ok = order == 1 and all(balanced) and kinds == [EXOTIC, EXOTIC] and dt < 1
    verdict(1, ok, f"aut order {order}, balanced {balanced}, kinds {kinds}, {dt:.2f}s")


def test_criterion_2_no_exotic_sweep():
    t0 = time.perf_counter()
    trees = colorings = bad = 0
    for g, cols in sweep():
        trees += 1
        for col in cols:
            colorings += 1
            try:
                cl = classify_coloring(g, col)
                good = cl.kind in (TRIVIAL, FIXED_POINT) and cl.realizer.orbit_coloring() == canonical(col)
            except Exception:
                good = False
            bad += not good
    dt = time.perf_counter() - t0
    verdict(2, bad == 0 and trees == 48 and dt < 60, f"{trees} trees, {colorings} colorings, {bad} failures, {dt:.1f}s")


def test_criterion_3_structure_laws():
    laws = {
        "leaf multisets": check_leaf_multiset_law,
        "reflected": check_all_reflected,
        "no vertex middle": check_no_vertex_middle,
        "same-class leaf": check_samecolorleaf,
        "adjacent class": check_adjacent_class_law,
        "quotient tree": check_quotient_tree_law,
    }
    violations = {name: 0 for name in laws}
    checked = 0
    for g, cols in sweep():
        for col in cols:
            checked += 1
            for name, law in laws.items():
                violations[name] += not law(g, col)
    total = sum(violations.values())
    verdict(3, total == 0, f"{checked} colorings, violations {violations}")


def test_criterion_4_binary_spectrum():
    g = binary7()
    p = CouplingParams(0.0, {1: 1.0, 2: 1.0, 3: 2.0})
    spec = spectrum(g, p)
    r = 2 * math.sqrt(2)
    expected = [0, 0, 0, 2, -2, r, -r]
    gap = spectrum_gap(spec.eigenvalues, expected)
    observed = spec.multiplicity(0.0)
    nu = brute_matching(g)
    bound = alpha_multiplicity_bound(g).bound
    ok = gap <= 1e-8 and observed == 3 == g.n - 2 * nu == bound
    verdict(4, ok, f"max eigenvalue error {gap:.2e}, multiplicity {observed}, n-2nu {g.n - 2 * nu}")


def test_criterion_5_random_spectra():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    fails = {"multiplicity": 0, "symmetry": 0, "containment": 0}
    modes = set()
    for _ in range(100):
        g = random_tree(int(rng.integers(2, 13)), rng)
        p = CouplingParams(float(rng.uniform(-2, 2)), {d: float(rng.uniform(-2, 2)) for d in sorted(set(g.degrees))})
        nu = brute_matching(g)
        fails["multiplicity"] += observed_alpha_multiplicity(g, p, 1e-7) < g.n - 2 * nu
        fails["symmetry"] += not check_spectrum_symmetry(g, p)
        wb = weyl_bounds(g, p)
        modes.add(wb.mode)
        fails["containment"] += not wb.contained
    dt = time.perf_counter() - t0
    ok = sum(fails.values()) == 0 and dt < 30
    verdict(5, ok, f"100 trees, violations {fails}, modes {sorted(modes)}, {dt:.1f}s")


def test_criterion_6_lyapunov_decay():
    g = binary7()
    pack = CherryPack.from_leaf_sets(g, [[3, 4], [5, 6]])
    rng = np.random.default_rng(6)
    worst = 0.0
    failed = 0
    wide = 0
    for _ in range(20):
        x0 = random_ball_point(7, 10.0, rng)
        rep = lyapunov_decay_test(g, example_nonlinear(), pack, x0, 5.0, -1.0, dt=1e-3, rtol=1e-4, strict=False)
        worst = max(worst, rep.max_ratio)
        failed += not rep.passed
        wide += rep.arithmetic == "wide"
    verdict(6, failed == 0, f"20 runs, worst V/V0e^-2t {worst:.8f}, {failed} failures, {wide} in wide arithmetic")


def test_criterion_7_cherry_jacobian():
    g = binary7()
    want = -(1 + math.exp(-0.09))
    rng = np.random.default_rng(7)
    worst = 0.0
    for pack_sets in ([[3, 4]], [[3, 4], [5, 6]]):
        pack = CherryPack.from_leaf_sets(g, pack_sets)
        for _ in range(5):
            omega = rng.uniform(-2, 2, size=7)
            omega[1] = 0.3
            omega[4] = omega[3]
            omega[6] = omega[5]
            rep = cherry_jacobian_check(g, example_nonlinear(), pack, omega)[0]
            worst = max(worst, abs(rep.eigenvalue - want) / abs(want))
    short = []
    for m in (2, 3, 4, 5, 6):
        s = star(m)
        pack = CherryPack.from_leaf_sets(s, [list(range(1, m + 1))])
        fields = [contracting_leaf(1.0), linear_field(CouplingParams(-0.4, {1: 1.0, m: 0.7}))]
        if m <= 3:
            fields.append(example_nonlinear())
        for f in fields:
            omega = [float(rng.normal())] + [float(rng.normal())] * m
            (rep,) = cherry_jacobian_check(s, f, pack, omega)
            if rep.multiplicity < m - 1:
                short.append((m, f.name, rep.multiplicity))
    ok = worst <= 1e-5 and not short
    verdict(7, ok, f"max relative eigenvalue error {worst:.2e}, star multiplicity shortfalls {short}")


def random_partition(n, rng):
    labels = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
    return canonical(labels.tolist())


def test_criterion_8_flow_invariance():
    rng = np.random.default_rng(8)
    fixtures = {
        "asymmetric7": asymmetric7(),
        "binary7": binary7(),
        "tree10": tree10(),
        "path5": path(5),
        "path4": path(4),
        "path2": path(2),
        "star3": star(3),
    }
    worst_inv = 0.0
    runs = 0
    missing = []
    min_witness = math.inf
    partitions = 0
    for name, g in fixtures.items():
        fields = builtin_fields(g)
        for col in enumerate_balanced(g):
            for f in fields:
                x0 = random_polydiagonal_point(col, rng)
                worst_inv = max(worst_inv, flow_invariance_deviation(g, f, col, x0, 5.0, 0.01))
                runs += 1
        if g.n <= 7:
            candidates = set_partitions(g.n)
        else:
            candidates = {random_partition(g.n, rng) for _ in range(400)}
            candidates = sorted(candidates)[:200]
        for col in candidates:
            if is_balanced(g, col):
                continue
            partitions += 1
            found = non_invariance_witness(g, col)
            if found is None:
                missing.append((name, col))
            else:
                min_witness = min(min_witness, found[1])
    ok = worst_inv < 1e-8 and not missing
    verdict(
        8, ok,
        f"{runs} invariant runs, max deviation {worst_inv:.1e}; {partitions} unbalanced partitions, "
        f"{len(missing)} without witness, smallest witness {min_witness:.3g}",
    )


def test_criterion_9_study(tmp_path, capsys):
    t0 = time.perf_counter()
    code = main(["study", "--count", "200", "--n-min", "10", "--n-max", "25", "--p-min", "0.2", "--p-max", "0.6",
                 "--dump-dir", str(tmp_path), "--json"])
    r = json.loads(capsys.readouterr().out)
    dt = time.perf_counter() - t0
    count = r["nontrivial_balanced_count"]
    dumped = len(list(tmp_path.glob("*.graph")))
    with capsys.disabled():
        note = "expected 0" if count == 0 else f"counterexamples dumped to {tmp_path}"
        # a positive count is reported for inspection, not treated as a failure
        verdict(9, code == 0 and dumped == count and dt < 600,
                f"nontrivial_balanced_count {count} of 200, {note}, {dt:.1f}s")


def rk4_terminal_error(dt):
    g = path(4)
    p = CouplingParams(-0.5, {1: 1.0, 2: 0.7})
    # DA + alpha I written out by hand: rows scaled by beta of the row's degree
    m = np.array([[0, 1.0, 0, 0], [0.7, 0, 0.7, 0], [0, 0.7, 0, 0.7], [0, 0, 1.0, 0]]) - 0.5 * np.eye(4)
    x0 = np.array([1.0, -0.5, 0.25, 2.0])
    w, v = np.linalg.eig(m)
    exact = (v @ np.diag(np.exp(2.0 * w)) @ np.linalg.solve(v, x0)).real
    traj = integrate(g, linear_field(p), x0, 2.0, dt)
    return float(np.linalg.norm(np.array(traj.final) - exact))


def test_criterion_10_rk4_order():
    e1, e2 = rk4_terminal_error(0.02), rk4_terminal_error(0.01)
    ratio = e1 / e2
    verdict(10, 12 <= ratio <= 20, f"errors {e1:.3e} -> {e2:.3e}, ratio {ratio:.2f}")
