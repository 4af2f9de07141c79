"""Covariance construction, contraction identities, and Gaussian closed forms."""

import math

import numpy as np
import pytest

from clusternet import (
    CovarianceMatrix,
    ImprintedNetwork,
    ModelSpec,
    ParameterError,
    ValidationError,
    cluster_covariance,
    gaussian_emergent,
    gaussian_photon_covariance,
    generate,
    pair_contractions,
    squeezing_from_db,
    squeezing_from_linear,
    weighted_degree,
)
from clusternet.gaussian import covariance_to_csv_text, gaussian_mean_photon

from conftest import random_model_spec, random_symmetric_covariance


def edge_pair() -> ImprintedNetwork:
    return ImprintedNetwork(2, np.array([[0, 1], [1, 0]]))


# ----------------------------------------------------------------------
# squeezing
# ----------------------------------------------------------------------

def test_squeezing_from_db():
    assert abs(squeezing_from_db(15.0).s - 31.6227766) < 1e-6
    assert squeezing_from_db(0.0).s == 1.0
    assert squeezing_from_db(10.0).s == 10.0


def test_squeezing_roundtrip_and_domain():
    sq = squeezing_from_linear(31.6227766016838)
    assert abs(sq.db - 15.0) < 1e-12
    with pytest.raises(ParameterError):
        squeezing_from_linear(-1.0)
    with pytest.raises(ParameterError):
        squeezing_from_db(float("nan"))


# ----------------------------------------------------------------------
# cluster covariance
# ----------------------------------------------------------------------

def test_single_mode_covariance():
    net = ImprintedNetwork(1, np.zeros((1, 1), dtype=int))
    cov = cluster_covariance(net, squeezing_from_linear(10.0))
    assert np.allclose(cov.v, np.diag([10.0, 0.1]))


def test_edge_pair_covariance_blocks():
    cov = cluster_covariance(edge_pair(), squeezing_from_linear(2.0))
    vxx, vxp, vpx, vpp = cov.blocks()
    assert np.allclose(vxx, 2.0 * np.eye(2))
    assert np.allclose(vxp, np.array([[0.0, 2.0], [2.0, 0.0]]))
    assert np.allclose(vpx, vxp)
    assert np.allclose(vpp, np.diag([2.5, 2.5]))


def test_unit_squeezing_covariance():
    net = generate(ModelSpec("ws", 12, seed=4, k=2, p=0.3))
    cov = cluster_covariance(net, squeezing_from_linear(1.0))
    a = net.adjacency.astype(float)
    assert np.allclose(cov.v[12:, 12:], a @ a + np.eye(12))
    assert abs(np.linalg.det(cov.v) - 1.0) < 1e-8


def test_cluster_covariance_is_pure():
    rng = np.random.default_rng(3)
    sq = squeezing_from_db(15.0)
    specs = [random_model_spec(rng, n_lo=5, n_hi=60) for _ in range(10)]
    specs.append(ModelSpec("complete", 100))
    for spec in specs:
        cov = cluster_covariance(generate(spec), sq)
        _, logdet = np.linalg.slogdet(cov.v)
        assert abs(logdet) < 1e-8


def test_covariance_validation():
    bad = np.eye(4)
    bad[0, 1] = 0.5
    with pytest.raises(ValidationError):
        CovarianceMatrix(2, bad)
    with pytest.raises(ValidationError):
        CovarianceMatrix(3, np.eye(4))


# ----------------------------------------------------------------------
# contraction tables
# ----------------------------------------------------------------------

def test_vacuum_contractions():
    table = pair_contractions(CovarianceMatrix(3, np.eye(6)))
    assert np.allclose(table.create_create, 0.0)
    assert np.allclose(table.annihilate_annihilate, 0.0)
    assert np.allclose(table.create_annihilate, 0.0)
    assert np.allclose(table.annihilate_create, np.eye(3))


def test_single_mode_squeezed_occupation():
    # <a^dag a> for V = diag(s, 1/s), s = 4: (4 + 0.25 - 2) / 4.
    table = pair_contractions(CovarianceMatrix(1, np.diag([4.0, 0.25])))
    assert abs(table.create_annihilate[0, 0] - 0.5625) < 1e-12


def test_cluster_contractions_match_walk_counts():
    net = generate(ModelSpec("ws", 10, seed=1, k=2, p=0.2))
    s = 7.0
    table = pair_contractions(cluster_covariance(net, squeezing_from_linear(s)))
    a = net.adjacency.astype(float)
    a2 = a @ a
    deg = a.sum(axis=1)
    for i in range(10):
        for j in range(10):
            if i == j:
                expected = (s + 1 / s + s * deg[i] - 2) / 4
            else:
                expected = s * a2[i, j] / 4
            assert abs(table.create_annihilate[i, j] - expected) < 1e-10


def test_contraction_hermiticity_relations(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        table = pair_contractions(random_symmetric_covariance(n, rng))
        eye = np.eye(n)
        # <a_j a^dag_k> = <a^dag_k a_j> + delta_jk
        assert np.allclose(table.annihilate_create,
                           table.create_annihilate.T + eye, atol=1e-12)
        # <a_j a_k> = conj(<a^dag_k a^dag_j>)
        assert np.allclose(table.annihilate_annihilate,
                           np.conj(table.create_create.T), atol=1e-12)


# ----------------------------------------------------------------------
# Gaussian closed forms
# ----------------------------------------------------------------------

def test_complete_graph_emergent_weight():
    # N=100, s^2 = 1000: every pair has 98 two-step walks and an edge, every
    # node has degree 99; the normalised covariance follows by arithmetic.
    net = generate(ModelSpec("complete", 100))
    enet = gaussian_emergent(net, squeezing_from_db(15.0))
    norm = (1000.0 + 1e-3 + 1000.0 * 99**2 + 2 * 99 - 2) / 8.0
    expected = (1000.0 / 8.0) * (98.0**2 + 2.0) / norm
    off = enet.weights[0, 1]
    assert abs(off - expected) < 1e-12
    assert abs(weighted_degree(enet)[0] - 99 * expected) < 1e-9
    assert np.all(np.diag(enet.weights) == 0.0)


def test_isolated_nodes_have_zero_weights():
    net = ImprintedNetwork(2, np.zeros((2, 2), dtype=int))
    enet = gaussian_emergent(net, squeezing_from_db(10.0))
    assert np.all(enet.weights == 0.0)


def test_edge_pair_emergent_weight():
    s = 5.0
    enet = gaussian_emergent(edge_pair(), squeezing_from_linear(s))
    norm = (s**2 + s**-2 + s**2 + 2 - 2) / 8.0
    assert abs(enet.weights[0, 1] - (s**2 / 4.0) / norm) < 1e-12


def test_gaussian_photon_covariance_closed_forms():
    # Unsqueezed isolated mode is vacuum: no photon-number fluctuations.
    lone = ImprintedNetwork(1, np.zeros((1, 1), dtype=int))
    assert gaussian_photon_covariance(lone, squeezing_from_linear(1.0))[0, 0] == 0.0

    # s=2 edge pair: off-diagonal (s^2/8) * (0 + 2) = 1.
    cov = gaussian_photon_covariance(edge_pair(), squeezing_from_linear(2.0))
    assert abs(cov[0, 1] - 1.0) < 1e-12

    # The diagonal is the normalisation entering the emergent closed form.
    net = generate(ModelSpec("ba", 20, seed=9, m=2))
    s = squeezing_from_db(15.0)
    cov = gaussian_photon_covariance(net, s)
    deg = net.adjacency.sum(axis=1).astype(float)
    norm = (s.s**2 + s.s**-2 + s.s**2 * deg**2 + 2 * deg - 2) / 8.0
    assert np.allclose(np.diag(cov), norm, rtol=1e-12)


def test_correlation_bound(rng):
    sq = squeezing_from_db(15.0)
    for _ in range(20):
        net = generate(random_model_spec(rng, n_lo=3, n_hi=25))
        cov = gaussian_photon_covariance(net, sq)
        var = np.diag(cov)
        ratio = np.abs(cov) / np.sqrt(np.outer(var, var))
        np.fill_diagonal(ratio, 0.0)
        assert ratio.max() <= 1.0 + 1e-9


def test_mean_photon_closed_form():
    net = generate(ModelSpec("ws", 8, seed=0, k=1, p=0.0))
    s = 3.0
    expected = (s + 1 / s + s * 2 - 2) / 4.0  # every ring node has degree 2
    assert np.allclose(gaussian_mean_photon(net, squeezing_from_linear(s)), expected)


def test_covariance_csv_roundtrip():
    cov = cluster_covariance(edge_pair(), squeezing_from_linear(2.0))
    text = covariance_to_csv_text(cov)
    rows = [[float(x) for x in line.split(",")] for line in text.strip().splitlines()]
    assert np.array_equal(np.array(rows), cov.v)
