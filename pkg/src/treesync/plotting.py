"""Figures for CLI reports. Uses the non-interactive Agg backend."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_trajectory(times: Sequence[float], states, path: str | Path, labels: Sequence[str] | None = None) -> None:
    """One line per cell; values beyond float range are clipped to the axes."""
    fig, ax = plt.subplots(figsize=(7, 4))
    n = len(states[0]) if len(states) else 0
    for i in range(n):
        ys = []
        for s in states:
            v = float(s[i])
            ys.append(v if math.isfinite(v) else float("nan"))
        ax.plot(times, ys, lw=1.2, label=labels[i] if labels else f"x{i + 1}")
    ax.set_xlabel("t")
    ax.set_ylabel("state")
    if n <= 12:
        ax.legend(fontsize=8, ncol=2)
    _save(fig, path)


def plot_decay(times: Sequence[float], values: Sequence[float], bound_rate: float, path: str | Path) -> None:
    """V(t) against the envelope V(0) e^{2Nt}, log scale."""
    fig, ax = plt.subplots(figsize=(7, 4))
    v0 = values[0]
    ax.semilogy(times, [max(v, 1e-300) for v in values], lw=1.5, label="V(t)")
    if v0 > 0:
        ax.semilogy(times, [v0 * math.exp(bound_rate * t) for t in times], "k--", lw=1, label="bound")
    ax.set_xlabel("t")
    ax.set_ylabel("V")
    ax.legend()
    _save(fig, path)


def plot_spectrum(eigs: Sequence[complex], lower: float, upper: float, alpha: float, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.axvspan(lower, upper, color="0.9", label="bound")
    ax.axvline(alpha, color="C3", lw=0.8, ls=":", label="alpha")
    ax.scatter([z.real for z in eigs], [z.imag for z in eigs], s=30, zorder=3)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(fontsize=8)
    _save(fig, path)


def plot_study(values: Sequence[int], xlabel: str, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    if values:
        lo, hi = min(values), max(values)
        ax.hist(values, bins=range(lo, hi + 2), align="left", rwidth=0.85)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("trials")
    _save(fig, path)
