"""Overlaid before/after histograms of an emergent-network measure.

One panel per run; within a panel the Gaussian and photon-subtracted
distributions are overlaid with shared bins.
"""

from __future__ import annotations

import matplotlib.pyplot as plt

from .cli import run_script
from .plotting import overlay_histograms, save
from .runio import RunData


def render_measure_hist(runs: list[RunData], measure: str, out, scale: str) -> None:
    loglog = scale == "loglog"
    fig, axes = plt.subplots(1, len(runs), figsize=(4.2 * len(runs), 3.4), squeeze=False)
    for ax, run in zip(axes[0], runs):
        series = {state: run.samples(state, measure)
                  for state in ("gaussian", "subtracted") if state in run.states()}
        overlay_histograms(ax, series, loglog)
        ax.set_title(run.label(), fontsize=9)
        ax.set_xlabel(f"emergent {measure}")
        ax.set_ylabel("nodes")
    fig.tight_layout()
    save(fig, out)


def degree_main(argv=None) -> int:
    return run_script(
        lambda runs, args: render_measure_hist(runs, "degree", args.out, args.scale),
        "Overlaid before/after histograms of the emergent weighted degree.",
        argv, scale=True)


def clustering_main(argv=None) -> int:
    return run_script(
        lambda runs, args: render_measure_hist(runs, "clustering", args.out, args.scale),
        "Overlaid before/after histograms of the emergent weighted clustering.",
        argv, scale=True)
