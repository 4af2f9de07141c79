"""Moment evaluation in Gaussian states via ordered perfect matchings.

An expectation value of an ordered product of creation/annihilation
operators in a zero-mean Gaussian state is the sum, over all ways of pairing
up the positions of the word, of the product of ordered pair contractions.
Because the contraction of a pair depends only on the (mode, kind) of its
two tokens, words with few distinct modes — such as repeated photon
subtraction in one mode — admit a polynomial dynamic program over the
multiset of still-open tokens.  The brute-force enumerator is kept as an
independent oracle.

Two engines provide the matching sum: a compiled Cython core and a
pure-Python fallback, selected at import time (override with the
CLUSTERNET_WICK_BACKEND environment variable: ``auto``, ``compiled``,
``python``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _wick_py
from .emergent import PhotonMoments
from .errors import (
    CapacityError,
    DegenerateSubtractionError,
    InternalConsistencyError,
    ParameterError,
)
from .gaussian import (
    ContractionTable,
    SqueezingParam,
    cluster_covariance,
    gaussian_mean_photon,
    gaussian_photon_covariance,
    pair_contractions,
)
from .graphgen import ImprintedNetwork, bfs_distances

try:
    from . import _wick_core
except ImportError:  # extension not built; pure-Python engine takes over
    _wick_core = None

CREATE = 0
ANNIHILATE = 1

#: A token is (mode index, kind); a word is an ordered sequence of tokens.
Token = tuple[int, int]
OperatorWord = Sequence[Token]

BRUTE_FORCE_MAX_LEN = 16

#: Relative threshold under which a subtraction normalisation counts as zero.
DEGENERATE_RTOL = 1e-12

#: Allowed relative imaginary residue on physically real moments.
REAL_RTOL = 1e-9

#: Largest mixed-radix state table handed to the compiled engine.
MAX_COMPILED_STATES = 1 << 20

_BACKEND_CHOICE = os.environ.get("CLUSTERNET_WICK_BACKEND", "auto")
if _BACKEND_CHOICE not in ("auto", "compiled", "python"):
    raise ParameterError(f"CLUSTERNET_WICK_BACKEND must be auto|compiled|python, got {_BACKEND_CHOICE!r}")
if _BACKEND_CHOICE == "compiled" and _wick_core is None:
    raise ImportError("CLUSTERNET_WICK_BACKEND=compiled but clusternet._wick_core is not built")


def active_backend() -> str:
    """Name of the engine used for large-word evaluations."""
    if _BACKEND_CHOICE == "python" or _wick_core is None:
        return "python"
    return "compiled"


def create(mode: int) -> Token:
    return (mode, CREATE)


def annihilate(mode: int) -> Token:
    return (mode, ANNIHILATE)


def number_word(mode: int) -> tuple[Token, Token]:
    """The photon-number observable n_i as the ordered word a^dag_i a_i."""
    return (create(mode), annihilate(mode))


@dataclass(frozen=True)
class SubtractionSpec:
    """Repeated photon subtraction: remove ``photons`` photons in ``node``."""

    node: int
    photons: int

    def __post_init__(self):
        if self.photons < 0:
            raise ParameterError(f"photon count must be >= 0, got {self.photons}")
        if self.node < 0:
            raise ParameterError(f"node index must be >= 0, got {self.node}")


def _ordered_contraction(table: ContractionTable, first: Token, second: Token) -> complex:
    """Contraction of two tokens, first at the earlier word position."""
    (m1, k1), (m2, k2) = first, second
    if k1 == CREATE and k2 == CREATE:
        return table.create_create[m1, m2]
    if k1 == ANNIHILATE and k2 == ANNIHILATE:
        return table.annihilate_annihilate[m1, m2]
    if k1 == CREATE:
        return table.create_annihilate[m1, m2]
    return table.annihilate_create[m1, m2]


def _check_word(word: OperatorWord, table: ContractionTable) -> None:
    for mode, kind in word:
        if not 0 <= mode < table.n_modes:
            raise ParameterError(f"token mode {mode} outside 0..{table.n_modes - 1}")
        if kind not in (CREATE, ANNIHILATE):
            raise ParameterError(f"token kind must be CREATE or ANNIHILATE, got {kind}")


def _word_plan(word: OperatorWord, table: ContractionTable) -> tuple[np.ndarray, np.ndarray]:
    """Class ids per position plus the ordered class-contraction matrix."""
    class_of: dict[Token, int] = {}
    ids = np.empty(len(word), dtype=np.int64)
    for pos, tok in enumerate(word):
        tok = (int(tok[0]), int(tok[1]))
        if tok not in class_of:
            class_of[tok] = len(class_of)
        ids[pos] = class_of[tok]
    tokens = list(class_of)
    n_classes = len(tokens)
    ctr = np.empty((n_classes, n_classes), dtype=np.complex128)
    for i, t1 in enumerate(tokens):
        for j, t2 in enumerate(tokens):
            ctr[i, j] = _ordered_contraction(table, t1, t2)
    return ids, ctr


def _dp_state_count(ids: np.ndarray) -> int:
    counts = np.bincount(ids) if ids.size else np.array([], dtype=np.int64)
    states = 1
    for c in counts:
        states *= int(c) + 1
    return states


def _dp(ids: np.ndarray, ctr: np.ndarray) -> complex:
    if (
        _BACKEND_CHOICE != "python"
        and _wick_core is not None
        and _dp_state_count(ids) <= MAX_COMPILED_STATES
    ):
        return _wick_core.dp_expectation(ids, ctr)
    return _wick_py.dp_expectation(ids, ctr)


def wick_expectation(word: OperatorWord, table: ContractionTable) -> complex:
    """Expectation of an ordered operator word in the Gaussian state.

    Empty words give 1, odd-length words 0 (the state is zero-mean).
    """
    _check_word(word, table)
    if len(word) == 0:
        return 1.0 + 0.0j
    if len(word) % 2 == 1:
        return 0.0 + 0.0j
    ids, ctr = _word_plan(word, table)
    return _dp(ids, ctr)


def wick_expectation_bruteforce(word: OperatorWord, table: ContractionTable) -> complex:
    """Oracle twin of :func:`wick_expectation`: exhaustive matching enumeration.

    No memoisation, no structure exploitation; every pairing of word
    positions is visited once.  Capped at words of length 16 — the matching
    count grows as (2M-1)!!.
    """
    _check_word(word, table)
    if len(word) > BRUTE_FORCE_MAX_LEN:
        raise CapacityError(
            f"brute-force enumeration capped at length {BRUTE_FORCE_MAX_LEN}, got {len(word)}")
    if len(word) == 0:
        return 1.0 + 0.0j
    if len(word) % 2 == 1:
        return 0.0 + 0.0j
    tokens = [(int(m), int(k)) for m, k in word]

    def matchings(positions: tuple[int, ...]) -> complex:
        if not positions:
            return 1.0 + 0.0j
        first = positions[0]
        total = 0.0 + 0.0j
        for at in range(1, len(positions)):
            second = positions[at]
            pair = _ordered_contraction(table, tokens[first], tokens[second])
            total += pair * matchings(positions[1:at] + positions[at + 1:])
        return total

    return matchings(tuple(range(len(tokens))))


def _matching_scale(word: OperatorWord, table: ContractionTable) -> float:
    """Cancellation-free magnitude scale: the matching sum over |contractions|.

    Upper-bounds the largest single matching term, so it serves as the scale
    against which a near-zero matching sum is declared degenerate.
    """
    if len(word) == 0:
        return 1.0
    ids, ctr = _word_plan(word, table)
    return abs(_dp(ids, np.abs(ctr).astype(np.complex128)))


def _require_real(value: complex, what: str) -> float:
    if abs(value.imag) > REAL_RTOL * max(1.0, abs(value.real)):
        raise InternalConsistencyError(
            f"{what} should be real; got imaginary residue {value.imag:.3e} "
            f"against real part {value.real:.3e}")
    return float(value.real)


class _SubtractedState:
    """Caches the normalisation of an n-photon-subtracted Gaussian state."""

    def __init__(self, sub: SubtractionSpec, table: ContractionTable):
        self.sub = sub
        self.table = table
        self.prefix = tuple(create(sub.node) for _ in range(sub.photons))
        self.suffix = tuple(annihilate(sub.node) for _ in range(sub.photons))
        norm_word = self.prefix + self.suffix
        self.norm = wick_expectation(norm_word, table)
        scale = _matching_scale(norm_word, table)
        if abs(self.norm) <= DEGENERATE_RTOL * scale or scale == 0.0:
            raise DegenerateSubtractionError(
                f"state has no {sub.photons}-photon component in node {sub.node} "
                f"(normalisation {abs(self.norm):.3e} against scale {scale:.3e})")

    def expect(self, middle: OperatorWord) -> float:
        value = wick_expectation(self.prefix + tuple(middle) + self.suffix, self.table)
        return _require_real(value / self.norm, "conditional moment")


def subtracted_expectation(middle: OperatorWord, sub: SubtractionSpec,
                           table: ContractionTable) -> float:
    """Expectation of ``middle`` in the n-photon-subtracted Gaussian state.

    Sandwiches the word between n creations and n annihilations in the
    subtraction node and divides by the same word with an empty middle.
    With n = 0 this reduces exactly to the plain Gaussian expectation.
    """
    if sub.photons == 0:
        return _require_real(wick_expectation(middle, table), "moment")
    return _SubtractedState(sub, table).expect(middle)


def photon_number_moments(table: ContractionTable, sub: SubtractionSpec,
                          pairs_needed: Sequence[tuple[int, int]]) -> PhotonMoments:
    """Photon-number moments <n_i>, <n_i^2> and <n_i n_j> after subtraction.

    Means and squares are computed for every node appearing in
    ``pairs_needed``, products for the listed pairs; all other entries are
    NaN.  The product n_i n_j is evaluated as the ordered word
    a^dag_i a_i a^dag_j a_j — ordered contractions absorb the commutators,
    so no normal ordering is needed (and i = j just works).
    """
    n = table.n_modes
    state = _SubtractedState(sub, table)
    mean = np.full(n, np.nan)
    product = np.full((n, n), np.nan)
    nodes = sorted({i for pair in pairs_needed for i in pair})
    for i in nodes:
        mean[i] = state.expect(number_word(i))
        product[i, i] = state.expect(number_word(i) + number_word(i))
    for i, j in pairs_needed:
        if i == j:
            continue
        value = state.expect(number_word(i) + number_word(j))
        product[i, j] = product[j, i] = value
    return PhotonMoments(mean=mean, product=product)


@dataclass
class LocalityFilter:
    """Pairs that photon subtraction in ``node`` can affect.

    A photon-number covariance changes only if both nodes sit within two
    imprinted-network steps of the subtraction node; for every other pair
    the Gaussian closed form stays exact (the normalised correlation can
    still move through its denominator).
    """

    node: int
    near: np.ndarray  # bool per node: distance <= 2 from the subtraction node

    def __call__(self, i: int, j: int) -> bool:
        return bool(self.near[i] and self.near[j])


def locality_filter(net: ImprintedNetwork, node: int) -> LocalityFilter:
    near = bfs_distances(net, node) <= 2
    return LocalityFilter(node=node, near=near)


def subtracted_photon_moments(net: ImprintedNetwork, squeezing: SqueezingParam,
                              sub: SubtractionSpec | None, exact: bool = False) -> PhotonMoments:
    """Full photon-number moment set of the (possibly subtracted) cluster state.

    By default the Wick engine only runs for node pairs within reach of the
    subtraction node; everything else takes the Gaussian closed forms, which
    the locality of photon subtraction makes exact.  ``exact=True`` disables
    the shortcut and evaluates every moment through the engine (with
    ``sub=None`` this yields the zero-subtraction Wick pipeline, useful for
    validating the closed forms).
    """
    n = net.n
    gauss_mean = gaussian_mean_photon(net, squeezing)
    gauss_cov = gaussian_photon_covariance(net, squeezing)

    if sub is None or sub.photons == 0:
        if not exact:
            product = gauss_cov + np.outer(gauss_mean, gauss_mean)
            return PhotonMoments(mean=gauss_mean.copy(), product=product)
        near = np.ones(n, dtype=bool)
        sub = SubtractionSpec(node=0, photons=0)
    elif exact:
        near = np.ones(n, dtype=bool)
    else:
        near = locality_filter(net, sub.node).near

    table = pair_contractions(cluster_covariance(net, squeezing))
    state = _SubtractedState(sub, table)

    mean = gauss_mean.copy()
    near_nodes = np.nonzero(near)[0]
    squares = {}
    for i in near_nodes:
        mean[i] = state.expect(number_word(i))
        squares[i] = state.expect(number_word(i) + number_word(i))

    # Far entries: covariances keep their Gaussian values exactly, so the
    # products follow from the (updated) means.
    product = gauss_cov + np.outer(mean, mean)
    np.fill_diagonal(product, np.diag(gauss_cov) + mean**2)
    for i in near_nodes:
        product[i, i] = squares[i]
        for j in near_nodes:
            if j <= i:
                continue
            value = state.expect(number_word(i) + number_word(j))
            product[i, j] = product[j, i] = value
    return PhotonMoments(mean=mean, product=product)
