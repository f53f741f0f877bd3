"""Fixed-step classical Runge-Kutta integration of admissible fields.

Two arithmetics are available. ``"float"`` is plain IEEE double. ``"wide"``
runs the same formulas on gmpy2 ``mpfr`` numbers with 53-bit mantissas but an
exponent range of about +-2^30 bits; some admissible fields (the example
nonlinear one included) have exact solutions that grow past 1e308 in finite
time while the synchrony quantities of interest stay moderate. ``"auto"`` tries
floats first and repeats the run in wide arithmetic if the state overflows.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence, TextIO

import gmpy2
import numpy as np

from .errors import NonFiniteState
from .fields import FieldSpec, evaluate_list
from .graph import Graph

ARITHMETICS = ("float", "wide", "auto")


@dataclass
class Trajectory:
    """Samples of one solution; ``states[k]`` is the state at ``times[k]``.

    In wide arithmetic the states are lists of ``mpfr`` values; ``as_array``
    converts to floats (overflowing entries become inf).
    """

    times: list[float]
    states: list[list]
    dt: float
    method: str = "rk4"
    arithmetic: str = "float"

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> list:
        return self.states[-1]

    def as_array(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.array([[float(v) for v in s] for s in self.states], dtype=float)

    def write_csv(self, out: TextIO) -> None:
        n = len(self.states[0]) if self.states else 0
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t"] + [f"x{i}" for i in range(n)])
        for t, s in zip(self.times, self.states):
            w.writerow([repr(float(t))] + [_fmt(v) for v in s])


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return format(v, ".17g")


def _finite(values) -> bool:
    for v in values:
        if isinstance(v, float):
            if not math.isfinite(v):
                return False
        elif not gmpy2.is_finite(v):
            return False
    return True


def _run(g: Graph, f: FieldSpec, x0: Sequence[float], t_end: float, dt: float, every: int, wide: bool) -> Trajectory:
    conv = gmpy2.mpfr if wide else float
    x = [conv(float(v)) for v in x0]
    n = g.n
    steps = int(math.floor(t_end / dt + 1e-9))
    last = t_end - steps * dt
    if last <= 1e-12 * max(1.0, t_end):
        last = 0.0
    times = [0.0]
    states = [list(x)]

    def rhs(y):
        return evaluate_list(g, f, y)

    def step(y, h):
        k1 = rhs(y)
        k2 = rhs([y[i] + (0.5 * h) * k1[i] for i in range(n)])
        k3 = rhs([y[i] + (0.5 * h) * k2[i] for i in range(n)])
        k4 = rhs([y[i] + h * k3[i] for i in range(n)])
        return [y[i] + (h / 6.0) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(n)]

    total = steps + (1 if last > 0 else 0)
    for k in range(1, total + 1):
        h = dt if k <= steps else last
        try:
            x = step(x, h)
        except (OverflowError, ZeroDivisionError) as exc:
            raise NonFiniteState(f"state overflowed near t = {k * dt:g}") from exc
        if not _finite(x):
            raise NonFiniteState(f"non-finite state at t = {min(k * dt, t_end):g}")
        if k % every == 0 or k == total:
            times.append(k * dt if k <= steps else t_end)
            states.append(list(x))
    return Trajectory(times, states, dt, "rk4", "wide" if wide else "float")


def integrate(
    g: Graph,
    f: FieldSpec,
    x0: Sequence[float],
    t_end: float,
    dt: float,
    every: int = 1,
    arithmetic: str = "float",
) -> Trajectory:
    """Classical RK4 with fixed step ``dt``; every ``every``-th state is kept."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not t_end >= 0:
        raise ValueError("t_end must be non-negative")
    if len(x0) != g.n:
        raise ValueError(f"initial state has length {len(x0)} but graph has {g.n} vertices")
    if arithmetic not in ARITHMETICS:
        raise ValueError(f"arithmetic must be one of {ARITHMETICS}")
    for d in set(g.degrees):
        f.component(d)
    if arithmetic == "auto":
        try:
            return _run(g, f, x0, t_end, dt, every, wide=False)
        except NonFiniteState:
            return _run(g, f, x0, t_end, dt, every, wide=True)
    return _run(g, f, x0, t_end, dt, every, wide=arithmetic == "wide")
