"""Many-realization experiments and their statistics.

One experiment draws many independent network realizations, builds the
Gaussian and (optionally) photon-subtracted emergent networks for each, and
pools per-node degree and clustering samples — overall, by shortest-path
distance from the subtraction node, and by each nearest neighbor's
connectivity inside the neighbor sub-network.  Moments carry bootstrap
standard errors.  Everything is deterministic in the master seed, whether
realizations run serially or across workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import emergent, graphgen, wick
from .errors import (
    ClusternetError,
    DegenerateSubtractionError,
    DegenerateVarianceError,
    ParameterError,
)
from .gaussian import gaussian_emergent, squeezing_from_db
from .graphgen import FAR_GROUP, ImprintedNetwork, ModelSpec
from .seeding import GRAPH_STREAM, SUBTRACT_STREAM, derive_seed, rng_for, string_tag

SUBTRACTION_KINDS = ("none", "hub", "random")
STATES = ("imprinted", "gaussian", "subtracted")
MEASURES = ("degree", "clustering")
DISTANCE_GROUPS = ("d0", "d1", "d2", "d3plus")

BOOTSTRAP_RESAMPLES = 1000


@dataclass(frozen=True)
class SubtractionPlan:
    """What to subtract: nothing, n photons in the biggest hub, or n photons
    in a uniformly random node (drawn per realization)."""

    kind: str = "none"
    photons: int = 0

    def __post_init__(self):
        if self.kind not in SUBTRACTION_KINDS:
            raise ParameterError(f"subtraction kind must be one of {SUBTRACTION_KINDS}, got {self.kind!r}")
        if self.kind != "none" and self.photons < 1:
            raise ParameterError(f"{self.kind} subtraction needs photons >= 1, got {self.photons}")
        if self.kind == "none" and self.photons != 0:
            raise ParameterError("subtraction kind 'none' requires photons == 0")


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of an ensemble run.

    ``model`` acts as a template: its ``seed`` field is ignored and replaced
    by a per-realization seed derived from ``master_seed``.
    """

    model: ModelSpec
    squeezing_db: float
    subtraction: SubtractionPlan = SubtractionPlan()
    realizations: int = 1
    master_seed: int = 0
    exact_mode: bool = False
    clustering_convention: str = "paper"

    def __post_init__(self):
        if self.realizations < 1:
            raise ParameterError(f"realizations must be >= 1, got {self.realizations}")
        if self.clustering_convention not in emergent.CLUSTERING_CONVENTIONS:
            raise ParameterError(
                f"clustering convention must be one of {emergent.CLUSTERING_CONVENTIONS}, "
                f"got {self.clustering_convention!r}")
        squeezing_from_db(self.squeezing_db)  # domain check


@dataclass
class RealizationRecord:
    """Everything retained about one network realization."""

    index: int
    graph_seed: int
    network: ImprintedNetwork
    subtraction_node: int | None = None
    distance_labels: np.ndarray | None = None
    nn_connectivity: np.ndarray | None = None  # -1 outside the distance-1 set
    imprinted_degree: np.ndarray | None = None
    imprinted_clustering: np.ndarray | None = None
    gaussian_degree: np.ndarray | None = None
    gaussian_clustering: np.ndarray | None = None
    subtracted_degree: np.ndarray | None = None
    subtracted_clustering: np.ndarray | None = None
    skipped: str | None = None

    def values(self, state: str, measure: str) -> np.ndarray | None:
        return getattr(self, f"{state}_{measure}")


@dataclass
class MomentSummary:
    """Plug-in mean/variance/skewness/kurtosis with bootstrap errors.

    Central moments are population estimators; kurtosis is non-excess
    (so it is >= 1 for any sample).  Skewness and kurtosis are None when the
    sample variance vanishes; each standard error is None when it cannot be
    estimated (fewer than 4 samples for the kurtosis error).
    """

    count: int
    mean: float
    variance: float
    skewness: float | None
    kurtosis: float | None
    mean_se: float | None = None
    variance_se: float | None = None
    skewness_se: float | None = None
    kurtosis_se: float | None = None


@dataclass
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    loglog: bool = False


@dataclass
class HistogramEntry:
    measure: str
    group: str
    state: str
    histogram: Histogram


@dataclass
class EnsembleReport:
    spec: ExperimentSpec
    records: list[RealizationRecord]
    groups: list[str]
    moments: dict[str, dict[str, dict[str, MomentSummary]]]  # group -> state -> measure
    histograms: list[HistogramEntry]
    skipped: list[tuple[int, str]]

    def states(self) -> list[str]:
        out = ["imprinted", "gaussian"]
        if self.spec.subtraction.kind != "none":
            out.append("subtracted")
        return out


# ----------------------------------------------------------------------
# Moment and histogram estimators
# ----------------------------------------------------------------------

def _central_stats(x: np.ndarray, axis: int = -1):
    mu = x.mean(axis=axis)
    d = x - np.expand_dims(mu, axis) if x.ndim > 1 else x - mu
    m2 = (d**2).mean(axis=axis)
    with np.errstate(divide="ignore", invalid="ignore"):
        skew = (d**3).mean(axis=axis) / m2**1.5
        kurt = (d**4).mean(axis=axis) / m2**2
    return mu, m2, skew, kurt


def _bootstrap_se(values: np.ndarray) -> float | None:
    finite = values[np.isfinite(values)]
    if finite.size < 2:
        return None
    return float(finite.std(ddof=1))


def moments(samples, resamples: int = BOOTSTRAP_RESAMPLES, seed: int = 0) -> MomentSummary:
    """Four distribution moments of a sample with bootstrap standard errors.

    Standard errors come from ``resamples`` nonparametric bootstrap draws
    seeded by ``seed``.  Requires at least 2 samples; the kurtosis error
    additionally requires at least 4.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1:
        x = x.ravel()
    count = x.size
    if count < 2:
        raise ParameterError(f"moments need at least 2 samples, got {count}")
    mean, var, skew, kurt = _central_stats(x)
    degenerate = var == 0.0

    rng = np.random.default_rng(seed)
    idx = rng.integers(0, count, size=(resamples, count))
    b_mean, b_var, b_skew, b_kurt = _central_stats(x[idx], axis=1)

    return MomentSummary(
        count=count,
        mean=float(mean),
        variance=float(var),
        skewness=None if degenerate else float(skew),
        kurtosis=None if degenerate else float(kurt),
        mean_se=_bootstrap_se(b_mean),
        variance_se=_bootstrap_se(b_var),
        skewness_se=None if degenerate else _bootstrap_se(b_skew),
        kurtosis_se=None if (degenerate or count < 4) else _bootstrap_se(b_kurt),
    )


def histogram(samples, bins=None, loglog: bool = False) -> Histogram:
    """Histogram with count, width, or explicit-edge binning.

    ``bins`` may be None (Freedman–Diaconis), an int (bin count), a float
    (bin width), or an array of edges (which must cover the samples).  With
    ``loglog`` the automatic binnings become geometric and all samples must
    be positive.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ParameterError("histogram needs at least one sample")
    if loglog and x.min() <= 0:
        raise ParameterError("log-log binning requires strictly positive samples")

    lo, hi = float(x.min()), float(x.max())
    if isinstance(bins, (list, tuple, np.ndarray)):
        edges = np.asarray(bins, dtype=float)
        if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
            raise ParameterError("explicit edges must be a monotone 1-d array")
        if lo < edges[0] or hi > edges[-1]:
            raise ParameterError("explicit edges must cover all samples")
    elif isinstance(bins, bool) or bins is None or isinstance(bins, (int, np.integer)):
        n_bins = None if bins is None else int(bins)
        if n_bins is not None and n_bins < 1:
            raise ParameterError(f"bin count must be >= 1, got {bins}")
        if hi == lo:
            edges = np.array([lo - 0.5, hi + 0.5])
        elif loglog:
            edges = np.geomspace(lo, hi, (n_bins or 10) + 1)
        elif n_bins is None:
            edges = np.histogram_bin_edges(x, bins="fd")
        else:
            edges = np.linspace(lo, hi, n_bins + 1)
    elif isinstance(bins, float):
        if bins <= 0:
            raise ParameterError(f"bin width must be positive, got {bins}")
        n_bins = max(1, int(np.ceil((hi - lo) / bins))) if hi > lo else 1
        edges = lo + bins * np.arange(n_bins + 1)
    else:
        raise ParameterError(f"unsupported binning {bins!r}")

    counts, edges = np.histogram(x, bins=edges)
    return Histogram(edges=edges, counts=counts, loglog=loglog)


# ----------------------------------------------------------------------
# Single realization
# ----------------------------------------------------------------------

def compute_realization(spec: ExperimentSpec, index: int) -> RealizationRecord:
    """Build and measure one realization; degenerate states mark it skipped."""
    graph_seed = derive_seed(spec.master_seed, index, GRAPH_STREAM)
    net = graphgen.generate(replace(spec.model, seed=graph_seed))
    record = RealizationRecord(index=index, graph_seed=graph_seed, network=net)
    record.imprinted_degree = graphgen.binary_degree(net).astype(float)
    record.imprinted_clustering = graphgen.binary_clustering(net)

    plan = spec.subtraction
    if plan.kind == "hub":
        record.subtraction_node = graphgen.highest_degree_node(net)
    elif plan.kind == "random":
        rng = rng_for(spec.master_seed, index, SUBTRACT_STREAM)
        record.subtraction_node = int(rng.integers(net.n))
    if record.subtraction_node is not None:
        node = record.subtraction_node
        record.distance_labels = graphgen.distance_group_labels(net, node)
        neighbors, _, counts = graphgen.neighbor_subnetwork(net, node)
        nn = np.full(net.n, -1, dtype=np.int64)
        nn[neighbors] = counts
        record.nn_connectivity = nn

    squeezing = squeezing_from_db(spec.squeezing_db)
    convention = spec.clustering_convention
    try:
        gaussian_net = gaussian_emergent(net, squeezing)
        record.gaussian_degree = emergent.weighted_degree(gaussian_net)
        record.gaussian_clustering = emergent.weighted_clustering(gaussian_net, convention)
        if plan.kind != "none":
            sub = wick.SubtractionSpec(node=record.subtraction_node, photons=plan.photons)
            photon_moments = wick.subtracted_photon_moments(
                net, squeezing, sub, exact=spec.exact_mode)
            subtracted_net = emergent.correlation_network(
                photon_moments, emergent.subtracted_tag(sub.node, sub.photons))
            record.subtracted_degree = emergent.weighted_degree(subtracted_net)
            record.subtracted_clustering = emergent.weighted_clustering(subtracted_net, convention)
    except (DegenerateSubtractionError, DegenerateVarianceError) as exc:
        record.skipped = f"{type(exc).__name__}: {exc}"
    return record


def _realization_task(args: tuple[ExperimentSpec, int]) -> RealizationRecord:
    return compute_realization(*args)


# ----------------------------------------------------------------------
# Grouping and pooling
# ----------------------------------------------------------------------

def _group_mask(record: RealizationRecord, group: str) -> np.ndarray:
    if group == "all":
        return np.ones(record.network.n, dtype=bool)
    labels = record.distance_labels
    if labels is None:
        raise ParameterError(f"group {group!r} needs a subtracted experiment")
    if group in DISTANCE_GROUPS:
        return labels == DISTANCE_GROUPS.index(group)
    if group.startswith("nn"):
        return (labels == 1) & (record.nn_connectivity == int(group[2:]))
    raise ParameterError(f"unknown group {group!r}")


def pooled_samples(records: list[RealizationRecord], state: str, measure: str,
                   group: str = "all") -> np.ndarray:
    """Samples of one measure pooled over realizations, in realization order."""
    chunks = []
    for record in records:
        if record.skipped is not None:
            continue
        values = record.values(state, measure)
        if values is None:
            continue
        chunks.append(values[_group_mask(record, group)])
    if not chunks:
        return np.empty(0)
    return np.concatenate(chunks)


def group_by_distance(records: list[RealizationRecord], state: str,
                      measure: str) -> dict[str, np.ndarray]:
    """Pooled samples split by distance from the subtraction node."""
    return {g: pooled_samples(records, state, measure, g) for g in DISTANCE_GROUPS}


def group_by_nn_connectivity(records: list[RealizationRecord], state: str,
                             measure: str) -> dict[str, np.ndarray]:
    """Pooled samples of the distance-1 nodes split by their connectivity
    inside the neighbor sub-network (buckets 0..max observed)."""
    top = -1
    for record in records:
        if record.skipped is None and record.nn_connectivity is not None:
            d1 = record.nn_connectivity[record.distance_labels == 1]
            if d1.size:
                top = max(top, int(d1.max()))
    return {f"nn{k}": pooled_samples(records, state, measure, f"nn{k}")
            for k in range(top + 1)}


# ----------------------------------------------------------------------
# The experiment driver
# ----------------------------------------------------------------------

def run_experiment(spec: ExperimentSpec, workers: int = 1) -> EnsembleReport:
    """Run all realizations and aggregate the report.

    Realizations are independent; with ``workers > 1`` they are computed in
    a process pool and merged by index, so the report is identical to a
    serial run.
    """
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    tasks = [(spec, r) for r in range(spec.realizations)]
    if workers == 1 or spec.realizations == 1:
        records = [_realization_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_realization_task, tasks, chunksize=1))

    skipped = [(r.index, r.skipped) for r in records if r.skipped is not None]
    subtraction = spec.subtraction.kind != "none"
    states = ["imprinted", "gaussian"] + (["subtracted"] if subtraction else [])

    groups = ["all"]
    if subtraction:
        groups.extend(DISTANCE_GROUPS)
        nn_groups = group_by_nn_connectivity(records, "gaussian", "degree")
        groups.extend(sorted(nn_groups, key=lambda g: int(g[2:])))

    moment_table: dict[str, dict[str, dict[str, MomentSummary]]] = {}
    histograms: list[HistogramEntry] = []
    for group in groups:
        by_state: dict[str, dict[str, MomentSummary]] = {}
        for measure in MEASURES:
            samples_by_state = {
                state: pooled_samples(records, state, measure, group) for state in states
            }
            pooled_all = np.concatenate([samples_by_state[s] for s in states])
            edges = None
            if pooled_all.size:
                edges = histogram(pooled_all).edges
            for state in states:
                samples = samples_by_state[state]
                if samples.size >= 2:
                    seed = derive_seed(
                        spec.master_seed, string_tag(f"bootstrap/{group}/{state}/{measure}"))
                    by_state.setdefault(state, {})[measure] = moments(samples, seed=seed)
                if samples.size and edges is not None:
                    histograms.append(HistogramEntry(
                        measure=measure, group=group, state=state,
                        histogram=histogram(samples, bins=edges)))
        moment_table[group] = by_state

    return EnsembleReport(
        spec=spec,
        records=records,
        groups=groups,
        moments=moment_table,
        histograms=histograms,
        skipped=skipped,
    )
