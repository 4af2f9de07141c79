"""Cluster-state covariance matrices and Gaussian closed forms.

Quadrature convention (fixed throughout the package): x = a^dag + a,
p = i(a^dag - a), vacuum quadrature variance <x^2> = 1.  The squeezing
parameter s is the variance ratio of the amplified quadrature relative to
vacuum, s = 10^(dB/10).  Covariance matrices are ordered (x_1..x_N,
p_1..p_N).  All second moments of mode operators — and hence everything the
Wick engine consumes — assume this convention; other normalisations (e.g.
hbar = 1/2) silently change every number downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .emergent import (
    EmergentNetwork,
    GAUSSIAN_TAG,
    VARIANCE_FLOOR,
    _finalize_weights,
)
from .errors import DegenerateVarianceError, ParameterError, ValidationError
from .graphgen import ImprintedNetwork, binary_degree


@dataclass(frozen=True)
class SqueezingParam:
    """Squeezing as a linear variance ratio ``s`` and its decibel value."""

    s: float
    db: float

    def __post_init__(self):
        if not np.isfinite(self.s) or self.s <= 0:
            raise ParameterError(f"squeezing must be positive and finite, got s={self.s}")


def squeezing_from_db(db: float) -> SqueezingParam:
    """Convert a decibel squeezing value: s = 10^(db/10)."""
    if not np.isfinite(db):
        raise ParameterError(f"squeezing dB value must be finite, got {db}")
    return SqueezingParam(s=10.0 ** (db / 10.0), db=float(db))


def squeezing_from_linear(s: float) -> SqueezingParam:
    if not np.isfinite(s) or s <= 0:
        raise ParameterError(f"squeezing must be positive and finite, got s={s}")
    return SqueezingParam(s=float(s), db=10.0 * float(np.log10(s)))


@dataclass
class CovarianceMatrix:
    """2N x 2N real symmetric quadrature covariance, (x..., p...) ordering."""

    n_modes: int
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        two_n = 2 * self.n_modes
        if v.shape != (two_n, two_n):
            raise ValidationError(f"covariance must be {two_n}x{two_n}, got {v.shape}")
        scale = max(1.0, float(np.abs(v).max()))
        if np.abs(v - v.T).max() > 1e-12 * scale:
            raise ValidationError("covariance matrix must be symmetric")
        self.v = v

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(V_xx, V_xp, V_px, V_pp) views."""
        n = self.n_modes
        return self.v[:n, :n], self.v[:n, n:], self.v[n:, :n], self.v[n:, n:]


def cluster_covariance(net: ImprintedNetwork, squeezing: SqueezingParam) -> CovarianceMatrix:
    """Covariance of the cluster state built on ``net``.

    Starting from N p-squeezed modes (x variance s, p variance 1/s), the
    C_Z-gate pattern of the adjacency matrix A yields the blocks
    V_xx = s*I, V_xp = V_px = s*A, V_pp = s*A^2 + I/s.  The construction is
    symplectic, so the state stays pure (det V = 1).
    """
    s = squeezing.s
    a = net.adjacency.astype(float)
    eye = np.eye(net.n)
    vxx = s * eye
    vxp = s * a
    vpp = s * (a @ a) + eye / s
    v = np.block([[vxx, vxp], [vxp, vpp]])
    return CovarianceMatrix(net.n, v)


@dataclass
class ContractionTable:
    """Ordered second moments of mode operators in a zero-mean Gaussian state.

    For every ordered mode pair (j, k): ``create_create[j, k]`` is
    <a^dag_j a^dag_k>, ``annihilate_annihilate`` <a_j a_k>,
    ``create_annihilate`` <a^dag_j a_k> and ``annihilate_create``
    <a_j a^dag_k>.  The operator order is part of the value — the commutator
    shows up as annihilate_create = create_annihilate^T + I.
    """

    n_modes: int
    create_create: np.ndarray
    annihilate_annihilate: np.ndarray
    create_annihilate: np.ndarray
    annihilate_create: np.ndarray


def pair_contractions(cov: CovarianceMatrix) -> ContractionTable:
    """Mode-operator second moments from a quadrature covariance matrix.

    Inverts x = a^dag + a, p = i(a^dag - a); products of non-commuting
    quadratures pick up the commutator on top of the symmetrised covariance,
    which is what makes the four tables order-sensitive.
    """
    vxx, vxp, vpx, vpp = cov.blocks()
    eye = np.eye(cov.n_modes)
    cc = (vxx - vpp - 1j * (vxp + vpx)) / 4.0
    aa = (vxx - vpp + 1j * (vxp + vpx)) / 4.0
    ca = (vxx + vpp + 1j * (vxp - vpx) - 2.0 * eye) / 4.0
    ac = (vxx + vpp - 1j * (vxp - vpx) + 2.0 * eye) / 4.0
    return ContractionTable(cov.n_modes, cc, aa, ca, ac)


def gaussian_mean_photon(net: ImprintedNetwork, squeezing: SqueezingParam) -> np.ndarray:
    """<n_i> of the cluster state: (s + 1/s + s*D_i - 2) / 4."""
    s = squeezing.s
    deg = binary_degree(net).astype(float)
    return (s + 1.0 / s + s * deg - 2.0) / 4.0


def gaussian_photon_covariance(net: ImprintedNetwork, squeezing: SqueezingParam) -> np.ndarray:
    """Photon-number covariance matrix of the cluster state (closed form).

    Off-diagonal: cov(n_i, n_j) = (s^2/8) * ((A^2)_ij^2 + 2 A_ij); diagonal:
    var(n_i) = (s^2 + 1/s^2 + s^2 D_i^2 + 2 D_i - 2) / 8.
    """
    s = squeezing.s
    a = net.adjacency.astype(float)
    a2 = a @ a
    deg = binary_degree(net).astype(float)
    cov = (s**2 / 8.0) * (a2**2 + 2.0 * a)
    np.fill_diagonal(cov, (s**2 + s**-2 + s**2 * deg**2 + 2.0 * deg - 2.0) / 8.0)
    return cov


def gaussian_emergent(net: ImprintedNetwork, squeezing: SqueezingParam) -> EmergentNetwork:
    """Emergent correlation network of the cluster state, in closed form.

    Normalises the photon-number covariances by the per-node variances; the
    result depends only on the squeezing, the adjacency matrix and its
    two-step walk counts.
    """
    cov = gaussian_photon_covariance(net, squeezing)
    var = np.diag(cov)
    if np.any(var <= VARIANCE_FLOOR):
        bad = int(np.argmin(var))
        raise DegenerateVarianceError(
            f"photon-number variance of node {bad} is {var[bad]:.3e}; "
            "cannot normalise correlations")
    w = cov / np.sqrt(np.outer(var, var))
    np.fill_diagonal(w, 0.0)
    w = _finalize_weights(w)
    return EmergentNetwork(net.n, w, GAUSSIAN_TAG)


def covariance_to_csv_text(cov: CovarianceMatrix) -> str:
    """Row-major CSV dump (debugging aid, not a stable interchange format)."""
    lines = [",".join(f"{x:.17g}" for x in row) for row in cov.v]
    return "\n".join(lines) + "\n"
