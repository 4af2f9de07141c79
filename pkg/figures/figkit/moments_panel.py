"""Four-row moment panel (mean, variance, skewness, kurtosis) with error bars.

Each run contributes one x position; the Gaussian and photon-subtracted
values of the chosen measure are drawn side by side with their bootstrap
standard errors.
"""

from __future__ import annotations

import matplotlib.pyplot as plt

from .cli import run_script
from .plotting import STATE_STYLE, save
from .runio import RunData, SchemaError, load_moments

ROWS = ("mean", "variance", "skewness", "kurtosis")


def render(runs: list[RunData], args) -> None:
    measure = args.measure
    cells = []
    for run in runs:
        groups = load_moments(run.path)["groups"]
        if "all" not in groups:
            raise SchemaError(f"moments.json in {run.path} has no 'all' group")
        cells.append(groups["all"])

    fig, axes = plt.subplots(len(ROWS), 1, figsize=(1.6 + 1.4 * len(runs), 9.0),
                             sharex=True)
    positions = range(len(runs))
    for row, stat in zip(axes, ROWS):
        for offset, state in ((-0.08, "gaussian"), (0.08, "subtracted")):
            xs, ys, errs = [], [], []
            for pos, cell in zip(positions, cells):
                entry = cell.get(state, {}).get(measure)
                if entry is None or entry[stat] is None:
                    continue
                xs.append(pos + offset)
                ys.append(entry[stat])
                errs.append(entry[f"{stat}_se"] or 0.0)
            if xs:
                style = STATE_STYLE[state]
                row.errorbar(xs, ys, yerr=errs, fmt="o", capsize=3,
                             color=style["color"], label=style["label"])
        row.set_ylabel(stat)
        row.grid(True, alpha=0.3)
    axes[0].legend(fontsize=8)
    axes[0].set_title(f"emergent {measure} moments", fontsize=10)
    axes[-1].set_xticks(list(positions))
    axes[-1].set_xticklabels([run.label() for run in runs], rotation=15, fontsize=8)
    fig.tight_layout()
    save(fig, args.out)


def main(argv=None) -> int:
    return run_script(render, "Mean/variance/skewness/kurtosis panel with "
                              "bootstrap error bars.", argv, measure=True)
