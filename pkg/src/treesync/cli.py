"""Command-line front end.

Every verb reads a GraphFile (1-indexed ids) and prints either a short text
summary or, with --json, a deterministic JSON document. Exit codes: 0 success,
2 bad input or configuration, 3 size limit exceeded, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import io
from .automorphisms import automorphism_group, has_nontrivial_automorphism
from .balanced import (
    ENUMERATION_MAX_N,
    classes_of,
    coarsest_balanced,
    enumerate_balanced,
    from_classes,
    is_discrete,
    require_balanced,
)
from .cherries import (
    CherryPack,
    find_cherries,
    lyapunov_decay_test,
    random_ball_point,
    random_polydiagonal_point,
    subspace_deviation,
)
from .errors import ConfigError, SizeLimit, TreeSyncError
from .fields import contracting_leaf, example_nonlinear, linear_field, zero_field
from .graph import Graph, is_tree
from .integrate import ARITHMETICS, integrate
from .pruning import classify_coloring, pruning_sequence, restrict_coloring
from .quotient import check_quotient_tree_law, quotient_network, undirected_simplification
from .spectral import (
    CouplingParams,
    alpha_multiplicity_bound,
    check_spectrum_symmetry,
    spectrum,
    weyl_bounds,
)
from .study import MODES, StudyConfig, run_study

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


def _one(classes: list[list[int]]) -> list[list[int]]:
    return [[v + 1 for v in c] for c in classes]


def _coloring_from_args(g: Graph, text: str | None):
    if text is None:
        return coarsest_balanced(g)
    return from_classes(g.n, io.parse_classes(text, g.n))


def _classification_dict(g: Graph, col, max_n: int) -> dict:
    try:
        cl = classify_coloring(g, col, max_n=max_n)
    except SizeLimit as exc:
        return {"kind": None, "error": str(exc)}
    out = {"kind": cl.kind}
    if cl.realizer is not None:
        out["realizer"] = cl.realizer.cycle_string()
    if cl.group_order is not None:
        out["class_preserving_order"] = cl.group_order
    return out


# --- verbs -----------------------------------------------------------------------


def cmd_analyze(args) -> dict:
    g = io.read_graph(args.path)
    tree = is_tree(g)
    report = {
        "n": g.n,
        "m": g.m,
        "is_tree": tree,
        "degrees": list(g.degrees),
        "leaves": [v + 1 for v in g.leaves()],
        "cherries": [c.to_dict() for c in find_cherries(g)],
    }
    try:
        if tree or g.n <= args.max_n:
            grp = automorphism_group(g, max_n=args.max_n)
            report["aut_order"] = grp.order
            report["is_asymmetric"] = grp.order == 1
            report["aut_generators"] = [p.cycle_string() for p in grp.generators]
        else:
            report["aut_order"] = None
            report["is_asymmetric"] = not has_nontrivial_automorphism(g)
    except SizeLimit as exc:
        report["aut_order"] = None
        report.setdefault("is_asymmetric", None)
        report["aut_error"] = str(exc)
    col = coarsest_balanced(g)
    report["coarsest_balanced"] = {
        "classes": _one(classes_of(col)),
        "num_classes": len(set(col)),
        "discrete": is_discrete(col),
    }
    report["classification"] = _classification_dict(g, col, args.max_n)
    return report


def cmd_colorings(args) -> dict:
    g = io.read_graph(args.path)
    cols = enumerate_balanced(g, max_n=args.max_n)
    items = []
    for col in cols:
        entry = {"classes": _one(classes_of(col)), "num_classes": len(set(col))}
        entry.update(_classification_dict(g, col, 16))
        items.append(entry)
    return {"n": g.n, "count": len(items), "colorings": items}


def cmd_quotient(args) -> dict:
    g = io.read_graph(args.path)
    col = _coloring_from_args(g, args.classes)
    q = quotient_network(g, col)
    gs = undirected_simplification(q)
    out = q.to_dict()
    out["simplified_edges"] = [[u + 1, v + 1] for u, v in gs.edges]
    out["simplified_is_tree"] = is_tree(gs)
    if is_tree(g):
        out["tree_law"] = check_quotient_tree_law(g, col)
    return out


def cmd_prune(args) -> dict:
    g = io.read_graph(args.path)
    trace = pruning_sequence(g)
    out = {
        "layers": [[v + 1 for v in layer] for layer in trace.layers],
        "survivors": [v + 1 for v in trace.survivors],
    }
    if args.classes is not None:
        col = _coloring_from_args(g, args.classes)
        require_balanced(g, col)
        levels = []
        for i in range(trace.depth + 1):
            verts, sub = restrict_coloring(g, col, trace, i)
            levels.append([[verts[j] + 1 for j in c] for c in classes_of(sub)])
        out["restricted_classes"] = levels
    return out


def cmd_spectrum(args) -> dict:
    g = io.read_graph(args.path)
    p = CouplingParams(args.alpha, io.parse_beta(args.beta or []))
    spec = spectrum(g, p)
    bound = alpha_multiplicity_bound(g)
    wb = weyl_bounds(g, p)
    out = {
        "alpha": p.alpha,
        "beta": {str(d): b for d, b in sorted(p.beta.items())},
        "alpha_multiplicity": {
            "observed": spec.multiplicity(p.alpha),
            "bound": bound.bound,
            "matching_size": bound.matching_size,
            "perfect_matching": bound.perfect_matching,
        },
        "alpha_distance": spec.distance_to(p.alpha),
        "symmetric_about_alpha": check_spectrum_symmetry(g, p),
        "weyl": wb.to_dict(),
    }
    out.update(spec.to_dict())
    if args.figure:
        from .plotting import plot_spectrum

        plot_spectrum(spec.eigenvalues, wb.lower, wb.upper, p.alpha, args.figure)
        out["figure"] = str(args.figure)
    return out


def resolve_field(text: str, g: Graph):
    name, params = io.parse_field(text)
    if name == "linear":
        alpha = params.pop("alpha", 0.0)
        beta = {}
        for k, v in params.items():
            if not k.startswith("beta") or not k[4:].isdigit():
                raise ConfigError(f"unknown linear field parameter '{k}'")
            beta[int(k[4:])] = v
        return linear_field(CouplingParams(alpha, beta))
    if name == "example-nonlinear":
        if params:
            raise ConfigError("example-nonlinear takes no parameters")
        return example_nonlinear()
    if name == "contracting-leaf":
        extra = set(params) - {"kappa"}
        if extra:
            raise ConfigError(f"unknown contracting-leaf parameter(s): {', '.join(sorted(extra))}")
        kappa = params.get("kappa", 1.0)
        if not kappa > 0:
            raise ConfigError("kappa must be positive")
        return contracting_leaf(kappa)
    if name == "zero":
        return zero_field()
    raise ConfigError(f"unknown field '{name}' (linear, example-nonlinear, contracting-leaf, zero)")


def cmd_simulate(args) -> dict:
    g = io.read_graph(args.path)
    f = resolve_field(args.field, g)
    for d in set(g.degrees):
        f.component(d)
    if args.dt <= 0 or args.t_end < 0:
        raise ConfigError("need --dt > 0 and --t-end >= 0")
    rng = np.random.default_rng(args.seed)
    col = _coloring_from_args(g, args.classes) if args.classes else None
    if args.x0 in (None, "random"):
        if col is not None:
            x0 = random_polydiagonal_point(col, rng, args.radius)
        else:
            x0 = random_ball_point(g.n, args.radius, rng)
    else:
        x0 = np.array(io.parse_vector(args.x0, g.n))
    out = {
        "field": f.name,
        "x0": [float(v) for v in x0],
        "t_end": args.t_end,
        "dt": args.dt,
    }
    pack = None
    if args.pack:
        pack = CherryPack.of(g, io.parse_pack(args.pack, g.n))
        if args.rate_bound is None:
            raise ConfigError("--rate-bound is required with --pack")
        rep = lyapunov_decay_test(
            g, f, pack, x0, args.t_end, args.rate_bound, dt=args.dt,
            rtol=args.rtol, arithmetic=args.arithmetic, strict=False,
            rng=np.random.default_rng(args.seed),
        )
        traj = rep.trajectory
        out["pack"] = pack.to_list()
        out["decay"] = rep.to_dict()
        out["verdict"] = rep.verdict
    else:
        traj = integrate(g, f, x0, args.t_end, args.dt, arithmetic=args.arithmetic)
    out["arithmetic"] = traj.arithmetic
    out["samples"] = len(traj)
    out["final"] = [float(v) for v in traj.final]
    if col is not None:
        out["classes"] = _one(classes_of(col))
        out["max_deviation"] = max(subspace_deviation(s, col) for s in traj.states)
    if args.out:
        if args.out == "-":
            traj.write_csv(sys.stdout)
        else:
            with open(args.out, "w", newline="") as fh:
                traj.write_csv(fh)
            out["csv"] = str(args.out)
    if args.figure:
        from .plotting import plot_decay, plot_trajectory

        if pack is not None:
            plot_decay(rep.times, rep.values, rep.bound_rate, args.figure)
        else:
            plot_trajectory(traj.times, traj.states, args.figure)
        out["figure"] = str(args.figure)
    return out


def cmd_study(args) -> dict:
    cfg = StudyConfig(
        count=args.count,
        n_min=args.n_min,
        n_max=args.n_max,
        p_min=args.p_min,
        p_max=args.p_max,
        seed=args.seed,
        mode=args.mode,
        enumerate_max_n=args.max_n,
    )
    out = run_study(cfg, dump_dir=args.dump_dir)
    if args.figure:
        from .plotting import plot_study

        if cfg.mode == "er-asymmetric":
            plot_study([t["n"] - t["coarsest_classes"] for t in out["trials"]],
                       "n minus coarsest class count", args.figure)
        else:
            plot_study([t["cherries"] for t in out["trials"]], "cherries per tree", args.figure)
        out["figure"] = str(args.figure)
    return out


# --- text summaries ------------------------------------------------------------


def _summary(verb: str, r: dict) -> str:
    if verb == "analyze":
        cb = r["coarsest_balanced"]
        return "\n".join([
            f"n={r['n']} m={r['m']} tree={r['is_tree']} aut_order={r['aut_order']}",
            f"coarsest balanced: {cb['num_classes']} classes {cb['classes']}",
            f"classification: {r['classification'].get('kind')}",
            f"cherries: {r['cherries']}",
        ])
    if verb == "colorings":
        lines = [f"{r['count']} balanced colorings"]
        for c in r["colorings"]:
            extra = f"  {c['realizer']}" if "realizer" in c else ""
            lines.append(f"  {c['kind']:<10} {c['classes']}{extra}")
        return "\n".join(lines)
    if verb == "quotient":
        rows = "\n".join("  " + " ".join(f"{x:2d}" for x in row) for row in r["mult"])
        return f"classes {r['classes']}\nmult\n{rows}\nG* edges {r['simplified_edges']}"
    if verb == "prune":
        return "\n".join([f"L^{i}: {layer}" for i, layer in enumerate(r["layers"])] + [f"survivors: {r['survivors']}"])
    if verb == "spectrum":
        am = r["alpha_multiplicity"]
        w = r["weyl"]
        vals = ", ".join(f"{z[0]:.10g}{z[1]:+.3g}i" if abs(z[1]) > 1e-12 else f"{z[0]:.10g}" for z in r["eigenvalues"])
        return "\n".join([
            f"eigenvalues: {vals}",
            f"alpha multiplicity: observed {am['observed']}, bound {am['bound']}, perfect matching {am['perfect_matching']}",
            f"bounds [{w['lower']:.10g}, {w['upper']:.10g}] ({w['mode']}), contained {w['contained']}",
        ])
    if verb == "simulate":
        lines = [f"field {r['field']}, {r['samples']} samples, arithmetic {r['arithmetic']}"]
        if "decay" in r:
            d = r["decay"]
            lines.append(f"verdict {d['verdict']}: fitted rate {d['fitted_rate']}, bound rate {d['bound_rate']}, max ratio {d['max_ratio']:.8g}")
        if "max_deviation" in r:
            lines.append(f"max deviation from polydiagonal: {r['max_deviation']:.3g}")
        return "\n".join(lines)
    if verb == "study":
        if r["mode"] == "er-asymmetric":
            return f"nontrivial_balanced_count {r['nontrivial_balanced_count']} of {r['config']['count']}"
        return (f"asymmetric_fraction {r['asymmetric_fraction']:.4f} cherry_fraction {r['cherry_fraction']:.4f} "
                f"exotic_count {r['exotic_count']}")
    return ""


# --- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--max-n", type=int, default=None, help="size bound for exhaustive routines")
    common.add_argument("--report", help="also write the JSON report to this file")

    ap = argparse.ArgumentParser(prog="treesync", description="Balanced colorings and synchrony on tree networks.")
    ap.add_argument("--version", action="version", version=io.VERSION)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", parents=[common], help="structure, symmetry and coarsest balanced coloring")
    p.add_argument("path")

    p = sub.add_parser("colorings", parents=[common], help="all balanced colorings, classified")
    p.add_argument("path")

    p = sub.add_parser("quotient", parents=[common], help="quotient network of a balanced coloring")
    p.add_argument("path")
    p.add_argument("--classes", help='classes like "1 2|3 4 5 6"; default: coarsest')

    p = sub.add_parser("prune", parents=[common], help="leaf pruning sequence of a tree")
    p.add_argument("path")
    p.add_argument("--classes", help="also restrict this coloring to every level")

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of the linearization DA + alpha I")
    p.add_argument("path")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", nargs="+", help="coupling per degree, e.g. 1=1 2=1 3=2")
    p.add_argument("--figure", help="save a spectrum plot here")

    p = sub.add_parser("simulate", parents=[common], help="integrate an admissible field")
    p.add_argument("path")
    p.add_argument("--field", required=True, help="linear:alpha=..,beta1=.. | example-nonlinear | contracting-leaf:kappa=..")
    p.add_argument("--x0", help='initial state "x1 x2 ..." or "random" (default)')
    p.add_argument("--radius", type=float, default=10.0, help="radius for random initial states")
    p.add_argument("--t-end", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--pack", help='cherry pack like "2:4,5;3:6,7" (center:leaves)')
    p.add_argument("--rate-bound", type=float, help="N < 0 with the leaf partial below N")
    p.add_argument("--rtol", type=float, default=1e-6)
    p.add_argument("--classes", help="report deviation from this polydiagonal")
    p.add_argument("--arithmetic", choices=ARITHMETICS, default="auto")
    p.add_argument("--out", help="write the trajectory CSV here ('-' for stdout)")
    p.add_argument("--figure", help="save a decay or trajectory plot here")

    p = sub.add_parser("study", parents=[common], help="random-graph study")
    p.add_argument("--mode", choices=MODES, default="er-asymmetric")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--n-min", type=int, default=10)
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--p-min", type=float, default=0.2)
    p.add_argument("--p-max", type=float, default=0.6)
    p.add_argument("--dump-dir", help="write counterexample graphs here")
    p.add_argument("--figure", help="save a histogram here")
    return ap


VERBS = {
    "analyze": (cmd_analyze, 16),
    "colorings": (cmd_colorings, ENUMERATION_MAX_N),
    "quotient": (cmd_quotient, 16),
    "prune": (cmd_prune, 16),
    "spectrum": (cmd_spectrum, 16),
    "simulate": (cmd_simulate, 16),
    "study": (cmd_study, ENUMERATION_MAX_N),
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    func, default_max = VERBS[args.verb]
    if args.max_n is None:
        args.max_n = default_max
    try:
        report = func(args)
    except SizeLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ValueError as exc:
        # every input or configuration problem is a ValueError subclass
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TreeSyncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = {"command": args.verb, "version": io.VERSION, **report}
    if args.report:
        Path(args.report).write_text(io.dump_json(report) + "\n")
    to_stdout_csv = getattr(args, "out", None) == "-"
    if args.json and not to_stdout_csv:
        io.dump_json(report, sys.stdout)
    elif not to_stdout_csv:
        print(_summary(args.verb, report))
    if report.get("verdict") == "FAIL":
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
