"""Random studies: balanced colorings of asymmetric random graphs, and random trees."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .automorphisms import automorphism_group, has_nontrivial_automorphism
from .balanced import classes_of, coarsest_balanced, enumerate_balanced, is_discrete, num_classes
from .cherries import find_cherries
from .errors import ConfigError
from .generators import erdos_renyi, random_tree
from .io import format_graph
from .pruning import EXOTIC, classify_coloring

MODES = ("er-asymmetric", "random-tree")
MAX_ATTEMPTS = 100_000


@dataclass(frozen=True)
class StudyConfig:
    count: int = 200
    n_min: int = 10
    n_max: int = 25
    p_min: float = 0.2
    p_max: float = 0.6
    seed: int = 42
    mode: str = "er-asymmetric"
    enumerate_max_n: int = 12

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}")
        if self.count <= 0:
            raise ConfigError("count must be positive")
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigError("need 1 <= n_min <= n_max")
        if not 0 < self.p_min <= self.p_max < 1:
            raise ConfigError("need 0 < p_min <= p_max < 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 bits")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(seed ^ trial)


def _er_trial(cfg: StudyConfig, i: int) -> dict:
    rng = trial_rng(cfg.seed, i)
    n = int(rng.integers(cfg.n_min, cfg.n_max + 1))
    p = float(rng.uniform(cfg.p_min, cfg.p_max))
    disconnected = symmetric = 0
    for attempt in range(1, MAX_ATTEMPTS + 1):
        g = erdos_renyi(n, p, rng)
        if not g.is_connected():
            disconnected += 1
            continue
        if has_nontrivial_automorphism(g, max_n=max(cfg.n_max, 25)):
            symmetric += 1
            continue
        col = coarsest_balanced(g)
        return {
            "trial": i,
            "n": n,
            "p": p,
            "m": g.m,
            "attempts": attempt,
            "rejected_disconnected": disconnected,
            "rejected_symmetric": symmetric,
            "coarsest_classes": num_classes(col),
            "nontrivial": not is_discrete(col),
            "_graph": g,
            "_coloring": col,
        }
    raise ConfigError(f"trial {i}: no connected asymmetric G({n}, {p:.3f}) in {MAX_ATTEMPTS} draws")


def _tree_trial(cfg: StudyConfig, i: int) -> dict:
    rng = trial_rng(cfg.seed, i)
    n = int(rng.integers(cfg.n_min, cfg.n_max + 1))
    g = random_tree(n, rng)
    order = automorphism_group(g).order
    if n <= cfg.enumerate_max_n:
        colorings = enumerate_balanced(g, max_n=cfg.enumerate_max_n)
        full = True
    else:
        colorings = [coarsest_balanced(g)]
        full = False
    exotic = sum(1 for c in colorings if classify_coloring(g, c).kind == EXOTIC)
    return {
        "trial": i,
        "n": n,
        "aut_order": order,
        "asymmetric": order == 1,
        "cherries": len(find_cherries(g)),
        "colorings_checked": len(colorings),
        "full_enumeration": full,
        "exotic": exotic,
    }


def run_study(cfg: StudyConfig, dump_dir: str | Path | None = None) -> dict:
    cfg.validate()
    summary = {"config": asdict(cfg)}
    if cfg.mode == "er-asymmetric":
        trials = [_er_trial(cfg, i) for i in range(cfg.count)]
        bad = [t for t in trials if t["nontrivial"]]
        counterexamples = []
        for t in bad:
            g, col = t["_graph"], t["_coloring"]
            entry = {
                "trial": t["trial"],
                "n": g.n,
                "p": t["p"],
                "edges": [[u + 1, v + 1] for u, v in g.edges],
                "coarsest_classes": [[v + 1 for v in c] for c in classes_of(col)],
            }
            if dump_dir is not None:
                path = Path(dump_dir) / f"counterexample_trial{t['trial']}.graph"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(format_graph(g, f"trial {t['trial']}, p = {t['p']:.6f}"))
                entry["file"] = str(path)
            counterexamples.append(entry)
        summary.update(
            {
                "mode": cfg.mode,
                "nontrivial_balanced_count": len(bad),
                "counterexamples": counterexamples,
                "rejected_disconnected": sum(t["rejected_disconnected"] for t in trials),
                "rejected_symmetric": sum(t["rejected_symmetric"] for t in trials),
                "trials": [{k: v for k, v in t.items() if not k.startswith("_")} for t in trials],
            }
        )
    else:
        trials = [_tree_trial(cfg, i) for i in range(cfg.count)]
        summary.update(
            {
                "mode": cfg.mode,
                "asymmetric_fraction": sum(t["asymmetric"] for t in trials) / cfg.count,
                "cherry_fraction": sum(t["cherries"] > 0 for t in trials) / cfg.count,
                "exotic_count": sum(t["exotic"] for t in trials),
                "colorings_checked": sum(t["colorings_checked"] for t in trials),
                "trials": trials,
            }
        )
    return summary
