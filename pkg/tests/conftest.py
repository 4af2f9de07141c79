"""Shared helpers for the test suite."""

import numpy as np
import pytest

from clusternet import CovarianceMatrix, ModelSpec, pair_contractions


def random_pure_covariance(n: int, rng: np.random.Generator) -> CovarianceMatrix:
    """Random pure-state quadrature covariance via orthogonal-squeeze-orthogonal."""
    def random_orthogonal():
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        return q * np.sign(np.diag(r))

    o1, o2 = random_orthogonal(), random_orthogonal()
    r = rng.uniform(-1.0, 1.0, size=n)
    squeeze = np.concatenate([np.exp(r), np.exp(-r)])
    s1 = np.block([[o1, np.zeros((n, n))], [np.zeros((n, n)), o1]])
    s2 = np.block([[o2, np.zeros((n, n))], [np.zeros((n, n)), o2]])
    m = s1 @ np.diag(squeeze) @ s2
    v = m @ m.T
    v = (v + v.T) / 2
    return CovarianceMatrix(n, v)


def random_symmetric_covariance(n: int, rng: np.random.Generator) -> CovarianceMatrix:
    """Random symmetric matrix; valid input for the contraction identities."""
    raw = rng.normal(size=(2 * n, 2 * n))
    return CovarianceMatrix(n, (raw + raw.T) / 2)


def random_table(n: int, rng: np.random.Generator):
    return pair_contractions(random_symmetric_covariance(n, rng))


def random_model_spec(rng: np.random.Generator, n_lo: int = 4, n_hi: int = 40) -> ModelSpec:
    kind = rng.choice(["ba", "ws", "er", "complete"])
    n = int(rng.integers(n_lo, n_hi + 1))
    seed = int(rng.integers(2**63))
    if kind == "ba":
        return ModelSpec("ba", n, seed, m=int(rng.integers(1, n)))
    if kind == "ws":
        k_hi = max(2, (n - 1) // 2)
        return ModelSpec("ws", n, seed, k=int(rng.integers(1, k_hi)), p=float(rng.random()))
    if kind == "er":
        return ModelSpec("er", n, seed, p=float(rng.random()))
    return ModelSpec("complete", n, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
