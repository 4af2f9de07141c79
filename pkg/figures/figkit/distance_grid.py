"""Distance-resolved histogram grid.

Top row: the full before/after degree histograms of each run.  Bottom row:
the photon-subtracted distribution split by shortest-path distance from the
subtraction node (0, 1, 2, >= 3).
"""

from __future__ import annotations

import matplotlib.pyplot as plt

from .cli import run_script
from .plotting import GROUP_CMAP, overlay_histograms, save, shared_edges
from .runio import FAR_CODE, RunData, SchemaError

DISTANCE_LABELS = {0: "0", 1: "1", 2: "2", FAR_CODE: ">=3"}


def _require_subtraction(run: RunData, kind: str) -> None:
    if "subtracted" not in run.states() or not run.has_subtraction():
        raise SchemaError(f"{kind} needs a run with photon subtraction, "
                          f"but {run.path} has none")


def render(runs: list[RunData], args) -> None:
    for run in runs:
        _require_subtraction(run, "distance_grid")
    loglog = args.scale == "loglog"
    fig, axes = plt.subplots(2, len(runs), figsize=(4.2 * len(runs), 6.4), squeeze=False)
    for col, run in enumerate(runs):
        top = axes[0][col]
        series = {state: run.samples(state, "degree")
                  for state in ("gaussian", "subtracted")}
        overlay_histograms(top, series, loglog)
        top.set_title(run.label(), fontsize=9)
        top.set_ylabel("nodes")

        bottom = axes[1][col]
        groups = {code: run.samples("subtracted", "degree", run.distance == code)
                  for code in DISTANCE_LABELS if (run.distance == code).any()}
        edges = shared_edges(list(groups.values()), loglog)
        for rank, (code, samples) in enumerate(sorted(groups.items())):
            color = GROUP_CMAP(rank / max(1, len(groups) - 1) * 0.85)
            bottom.hist(samples[samples > 0] if loglog else samples, bins=edges,
                        histtype="stepfilled", alpha=0.5, color=color,
                        label=f"distance {DISTANCE_LABELS[code]}")
        if loglog:
            bottom.set_xscale("log")
            bottom.set_yscale("log")
        bottom.legend(fontsize=8)
        bottom.set_xlabel("emergent degree (after subtraction)")
        bottom.set_ylabel("nodes")
    fig.tight_layout()
    save(fig, args.out)


def main(argv=None) -> int:
    return run_script(render, "Full and distance-resolved degree histograms "
                              "of photon-subtracted runs.", argv, scale=True)
