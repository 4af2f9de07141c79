"""Shared plotting helpers: overlay histograms and timestamp-free output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "clusternet-figures"  # reproducible ids

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

#: state colors: cyan-ish before subtraction, red after
STATE_STYLE = {
    "gaussian": {"color": "#1c9aa8", "label": "before subtraction"},
    "subtracted": {"color": "#d62728", "label": "after subtraction"},
    "imprinted": {"color": "#7f7f7f", "label": "imprinted"},
}

GROUP_CMAP = plt.get_cmap("viridis")


def shared_edges(series: list[np.ndarray], loglog: bool, bins: int = 30) -> np.ndarray:
    """Common bin edges over the union of all series."""
    pooled = np.concatenate([s for s in series if s.size])
    if loglog:
        pooled = pooled[pooled > 0]
        if pooled.size == 0:
            raise ValueError("log-log axes need positive samples")
        lo, hi = pooled.min(), pooled.max()
        if lo == hi:
            lo, hi = lo * 0.9, hi * 1.1
        return np.geomspace(lo, hi, bins + 1)
    lo, hi = pooled.min(), pooled.max()
    if lo == hi:
        return np.array([lo - 0.5, hi + 0.5])
    return np.linspace(lo, hi, bins + 1)


def overlay_histograms(ax, series: dict[str, np.ndarray], loglog: bool,
                       styles: dict | None = None) -> None:
    """Draw step histograms with shared binning for every labelled series."""
    edges = shared_edges(list(series.values()), loglog)
    for label, samples in series.items():
        style = (styles or STATE_STYLE).get(label, {})
        if loglog:
            samples = samples[samples > 0]
        ax.hist(samples, bins=edges, histtype="stepfilled", alpha=0.45,
                color=style.get("color"), label=style.get("label", label))
    if loglog:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.legend(fontsize=8)


def save(fig, out_path) -> list[Path]:
    """Write PNG and SVG next to each other, with embedded dates disabled."""
    out = Path(out_path)
    base = out.with_suffix("") if out.suffix.lower() in (".png", ".svg") else out
    written = []
    for suffix in (".png", ".svg"):
        target = base.with_suffix(suffix)
        fig.savefig(target, metadata={"Date": None}, dpi=150)
        written.append(target)
    plt.close(fig)
    return written
