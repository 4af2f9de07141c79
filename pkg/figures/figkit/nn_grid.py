"""Nearest-neighbor connectivity histogram grid.

Top row: before/after degree histograms of the subtraction node's nearest
neighbors.  Bottom row: the subtracted distribution split by how many other
nearest neighbors each node is connected to inside the neighbor sub-network.
"""

from __future__ import annotations

import matplotlib.pyplot as plt

from .cli import run_script
from .distance_grid import _require_subtraction
from .plotting import overlay_histograms, save, shared_edges
from .runio import RunData


def render(runs: list[RunData], args) -> None:
    for run in runs:
        _require_subtraction(run, "nn_grid")
    loglog = args.scale == "loglog"
    fig, axes = plt.subplots(2, len(runs), figsize=(4.2 * len(runs), 6.4), squeeze=False)
    cmap = plt.get_cmap("plasma")
    for col, run in enumerate(runs):
        d1 = run.distance == 1
        top = axes[0][col]
        series = {state: run.samples(state, "degree", d1)
                  for state in ("gaussian", "subtracted")}
        overlay_histograms(top, series, loglog)
        top.set_title(f"{run.label()} — nearest neighbors", fontsize=9)
        top.set_ylabel("nodes")

        bottom = axes[1][col]
        buckets = sorted({int(v) for v in run.nn_connectivity[d1]})
        groups = {b: run.samples("subtracted", "degree", d1 & (run.nn_connectivity == b))
                  for b in buckets}
        edges = shared_edges(list(groups.values()), loglog)
        for rank, (bucket, samples) in enumerate(groups.items()):
            color = cmap(rank / max(1, len(groups) - 1) * 0.85)
            bottom.hist(samples[samples > 0] if loglog else samples, bins=edges,
                        histtype="stepfilled", alpha=0.5, color=color,
                        label=f"{bucket} neighbor links")
        if loglog:
            bottom.set_xscale("log")
            bottom.set_yscale("log")
        bottom.legend(fontsize=8)
        bottom.set_xlabel("emergent degree (after subtraction)")
        bottom.set_ylabel("nodes")
    fig.tight_layout()
    save(fig, args.out)


def main(argv=None) -> int:
    return run_script(render, "Degree histograms of the nearest neighbors, "
                              "split by neighbor-sub-network connectivity.",
                      argv, scale=True)
