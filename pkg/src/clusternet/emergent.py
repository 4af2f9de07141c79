"""Weighted emergent networks of photon-number correlations.

The emergent network links every pair of modes by the absolute value of
their normalised photon-number correlation: weight 1 means both modes carry
the same photon number, 0 means uncorrelated.  Weighted degree and weighted
clustering summarise its structure per node.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVarianceError, InternalConsistencyError, ValidationError

GAUSSIAN_TAG = "gaussian"

#: Weights may exceed 1 by at most this much before clipping is refused.
WEIGHT_SLACK = 1e-9

#: Variances at or below this are treated as degenerate (vacuum-like mode).
VARIANCE_FLOOR = 1e-12

CLUSTERING_CONVENTIONS = ("paper", "strict")


def subtracted_tag(node: int, photons: int) -> str:
    """State tag for an n-photon-subtracted state."""
    return f"subtracted(node={node},photons={photons})"


@dataclass
class PhotonMoments:
    """First and second photon-number moments of a state.

    ``mean[i]`` is <n_i>; ``product[i, j]`` is <n_i n_j> with the diagonal
    holding <n_i^2>.
    """

    mean: np.ndarray
    product: np.ndarray

    @property
    def n(self) -> int:
        return self.mean.shape[0]

    def covariance(self) -> np.ndarray:
        return self.product - np.outer(self.mean, self.mean)

    def variance(self) -> np.ndarray:
        return np.diag(self.product) - self.mean**2


@dataclass
class EmergentNetwork:
    """Symmetric weighted adjacency with entries in [0, 1], zero diagonal."""

    n: int
    weights: np.ndarray
    state_tag: str = GAUSSIAN_TAG

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.n, self.n):
            raise ValidationError(f"weights must be {self.n}x{self.n}, got {w.shape}")
        if not np.allclose(w, w.T, atol=1e-12, rtol=0.0):
            raise ValidationError("weights must be symmetric")
        if np.any(np.diag(w) != 0.0):
            raise ValidationError("weights diagonal must be zero")
        if w.min() < 0.0 or w.max() > 1.0:
            raise ValidationError("weights must lie in [0, 1]")
        self.weights = w


def _finalize_weights(w: np.ndarray) -> np.ndarray:
    """Clip the floating-point overshoot of the [0, 1] bound.

    Values in (1, 1 + WEIGHT_SLACK] clip to 1; anything larger indicates a
    broken covariance and is refused.
    """
    over = w.max() - 1.0
    if over > WEIGHT_SLACK:
        raise InternalConsistencyError(
            f"correlation weight exceeds 1 by {over:.3e} (> {WEIGHT_SLACK})")
    return np.clip(w, 0.0, 1.0)


def correlation_network(moments: PhotonMoments, state_tag: str = GAUSSIAN_TAG) -> EmergentNetwork:
    """Build the emergent network from photon-number moments.

    Off-diagonal weights are |cov(n_i, n_j)| / sqrt(var(n_i) var(n_j)); the
    diagonal is dropped.  Raises DegenerateVarianceError when any mode has
    (numerically) zero photon-number variance.
    """
    var = moments.variance()
    if np.any(var <= VARIANCE_FLOOR):
        bad = int(np.argmin(var))
        raise DegenerateVarianceError(
            f"photon-number variance of node {bad} is {var[bad]:.3e}; "
            "cannot normalise correlations")
    cov = moments.covariance()
    w = np.abs(cov) / np.sqrt(np.outer(var, var))
    np.fill_diagonal(w, 0.0)
    w = _finalize_weights(w)
    w = (w + w.T) / 2.0  # exact symmetry against fp jitter
    return EmergentNetwork(moments.n, w, state_tag)


def weighted_degree(net: EmergentNetwork) -> np.ndarray:
    """Per-node weighted degree (row sums)."""
    return net.weights.sum(axis=1)


def weighted_clustering(net: EmergentNetwork, convention: str = "paper") -> np.ndarray:
    """Per-node weighted clustering: closed-triangle weight over triplet weight.

    The numerator sums w_ij * w_jk * w_ki over ordered pairs j != k (both
    different from i).  The ``paper`` convention squares the degree in the
    denominator (it keeps the j == k terms); ``strict`` excludes them.  Only
    the ``paper`` convention reproduces the published complete-graph values.
    Nodes with (numerically) zero denominator get clustering 0.
    """
    if convention not in CLUSTERING_CONVENTIONS:
        raise ValidationError(f"unknown clustering convention {convention!r}")
    w = net.weights
    numerator = np.einsum("ij,jk,ki->i", w, w, w)
    degree = w.sum(axis=1)
    denominator = degree**2
    if convention == "strict":
        denominator = denominator - (w**2).sum(axis=1)
    out = np.zeros(net.n, dtype=float)
    mask = denominator > 1e-12
    out[mask] = numerator[mask] / denominator[mask]
    return out


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

def to_csv_text(net: EmergentNetwork) -> str:
    """Dense N x N CSV at 17 significant digits."""
    lines = [",".join(f"{x:.17g}" for x in row) for row in net.weights]
    return "\n".join(lines) + "\n"


def to_json_obj(net: EmergentNetwork) -> dict:
    return {
        "n": net.n,
        "state_tag": net.state_tag,
        "weights": [float(x) for x in net.weights.ravel()],
    }


def from_json_obj(obj: dict) -> EmergentNetwork:
    n = int(obj["n"])
    w = np.asarray(obj["weights"], dtype=float).reshape(n, n)
    return EmergentNetwork(n, w, str(obj["state_tag"]))


def write_csv(net: EmergentNetwork, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_csv_text(net))


def write_json(net: EmergentNetwork, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_obj(net), fh)
        fh.write("\n")
