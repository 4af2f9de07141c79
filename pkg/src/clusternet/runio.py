"""Run-directory output files and the JSON config format.

A run directory holds four artifacts, all deterministic in the config:

* ``manifest.json`` — config echo, library versions, engine name, and a
  per-realization log (seed, subtraction node, adjacency lists, skip reason).
* ``samples.csv`` — one row per (realization, state, node):
  ``realization,node,group_distance,nn_connectivity,state,degree,clustering``.
* ``moments.json`` — moment summaries per group x state x measure.
* ``histograms.csv`` — pre-binned counts:
  ``measure,group,state,bin_left,bin_right,count``.

Numeric CSV fields are written with 17 significant digits, so re-reading
reproduces the doubles exactly.  The manifest doubles as a config: feeding
it back to ``clusternet run`` reproduces the run byte for byte.
"""

from __future__ import annotations

import json
import platform
from pathlib import Path

import numpy as np

from . import __version__
from .ensemble import (
    EnsembleReport,
    ExperimentSpec,
    MomentSummary,
    SubtractionPlan,
)
from .errors import ParameterError
from .graphgen import ModelSpec
from .wick import active_backend

CONFIG_SCHEMA_VERSION = 1

MANIFEST_NAME = "manifest.json"
SAMPLES_NAME = "samples.csv"
MOMENTS_NAME = "moments.json"
HISTOGRAMS_NAME = "histograms.csv"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ----------------------------------------------------------------------
# Config codec
# ----------------------------------------------------------------------

def spec_to_config(spec: ExperimentSpec, workers: int | None = None,
                   out_dir: str | None = None) -> dict:
    model: dict = {"kind": spec.model.kind, "n": spec.model.n}
    for key in ("m", "k", "p"):
        value = getattr(spec.model, key)
        if value is not None:
            model[key] = value
    config = {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "model": model,
        "squeezing_db": spec.squeezing_db,
        "subtraction": {"kind": spec.subtraction.kind, "photons": spec.subtraction.photons},
        "realizations": spec.realizations,
        "master_seed": spec.master_seed,
        "exact_mode": spec.exact_mode,
        "clustering_convention": spec.clustering_convention,
    }
    if workers is not None:
        config["workers"] = workers
    if out_dir is not None:
        config["out_dir"] = out_dir
    return config


class _ConfigReader:
    """Field access with path-qualified error messages."""

    def __init__(self, obj: dict, path: str = ""):
        if not isinstance(obj, dict):
            raise ParameterError(f"config error at {path or '<root>'}: expected an object")
        self.obj = obj
        self.path = path

    def _at(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def get(self, key: str, kind, required: bool = True, default=None):
        if key not in self.obj:
            if required:
                raise ParameterError(f"config error at {self._at(key)}: missing required field")
            return default
        value = self.obj[key]
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
            raise ParameterError(f"config error at {self._at(key)}: expected an integer")
        if not isinstance(value, kind):
            raise ParameterError(f"config error at {self._at(key)}: expected {kind.__name__}")
        return value

    def section(self, key: str) -> "_ConfigReader":
        return _ConfigReader(self.get(key, dict), self._at(key))


def spec_from_config(obj: dict) -> tuple[ExperimentSpec, int | None, str | None]:
    """Parse a config object; returns (spec, workers, out_dir).

    Unknown top-level keys are ignored, which is what lets a manifest be fed
    back in as a config.
    """
    reader = _ConfigReader(obj)
    version = reader.get("schema_version", int)
    if version != CONFIG_SCHEMA_VERSION:
        raise ParameterError(
            f"config error at schema_version: expected {CONFIG_SCHEMA_VERSION}, got {version}")

    model_reader = reader.section("model")
    try:
        model = ModelSpec(
            kind=model_reader.get("kind", str),
            n=model_reader.get("n", int),
            m=model_reader.get("m", int, required=False),
            k=model_reader.get("k", int, required=False),
            p=model_reader.get("p", float, required=False),
        )
    except ParameterError as exc:
        raise ParameterError(f"config error at model: {exc}") from exc

    sub_reader = reader.section("subtraction")
    try:
        plan = SubtractionPlan(
            kind=sub_reader.get("kind", str),
            photons=sub_reader.get("photons", int, required=False, default=0),
        )
    except ParameterError as exc:
        raise ParameterError(f"config error at subtraction: {exc}") from exc

    try:
        spec = ExperimentSpec(
            model=model,
            squeezing_db=reader.get("squeezing_db", float),
            subtraction=plan,
            realizations=reader.get("realizations", int, required=False, default=1),
            master_seed=reader.get("master_seed", int, required=False, default=0),
            exact_mode=reader.get("exact_mode", bool, required=False, default=False),
            clustering_convention=reader.get(
                "clustering_convention", str, required=False, default="paper"),
        )
    except ParameterError as exc:
        raise ParameterError(f"config error: {exc}") from exc

    workers = reader.get("workers", int, required=False)
    out_dir = reader.get("out_dir", str, required=False)
    return spec, workers, out_dir


def load_config(path) -> tuple[ExperimentSpec, int | None, str | None]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config error: {path} is not valid JSON ({exc})") from exc
    return spec_from_config(obj)


# ----------------------------------------------------------------------
# Report writing
# ----------------------------------------------------------------------

def _moment_summary_obj(summary: MomentSummary) -> dict:
    return {
        "count": summary.count,
        "mean": summary.mean,
        "variance": summary.variance,
        "skewness": summary.skewness,
        "kurtosis": summary.kurtosis,
        "mean_se": summary.mean_se,
        "variance_se": summary.variance_se,
        "skewness_se": summary.skewness_se,
        "kurtosis_se": summary.kurtosis_se,
    }


def write_run(report: EnsembleReport, out_dir) -> Path:
    """Write manifest, samples, moments and histograms into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    manifest = spec_to_config(report.spec)
    manifest["versions"] = {
        "clusternet": __version__,
        "numpy": np.__version__,
        "python": platform.python_version(),
    }
    manifest["wick_backend"] = active_backend()
    manifest["skipped_realizations"] = [
        {"index": idx, "reason": reason} for idx, reason in report.skipped
    ]
    manifest["realization_log"] = [
        {
            "index": record.index,
            "graph_seed": record.graph_seed,
            "subtraction_node": record.subtraction_node,
            "skipped": record.skipped,
            "adjacency": record.network.neighbor_lists(),
        }
        for record in report.records
    ]
    with open(out / MANIFEST_NAME, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    with open(out / SAMPLES_NAME, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("realization,node,group_distance,nn_connectivity,state,degree,clustering\n")
        for record in report.records:
            if record.skipped is not None:
                continue
            labels = record.distance_labels
            nn = record.nn_connectivity
            for state in report.states():
                degree = record.values(state, "degree")
                clustering = record.values(state, "clustering")
                for node in range(record.network.n):
                    group = "" if labels is None else str(int(labels[node]))
                    conn = "" if (nn is None or nn[node] < 0) else str(int(nn[node]))
                    fh.write(
                        f"{record.index},{node},{group},{conn},{state},"
                        f"{_fmt(degree[node])},{_fmt(clustering[node])}\n")

    moments_obj = {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "clustering_convention": report.spec.clustering_convention,
        "groups": {
            group: {
                state: {
                    measure: _moment_summary_obj(summary)
                    for measure, summary in measures.items()
                }
                for state, measures in states.items()
            }
            for group, states in report.moments.items()
        },
    }
    with open(out / MOMENTS_NAME, "w", encoding="utf-8") as fh:
        json.dump(moments_obj, fh, indent=2, sort_keys=True)
        fh.write("\n")

    with open(out / HISTOGRAMS_NAME, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("measure,group,state,bin_left,bin_right,count\n")
        for entry in report.histograms:
            hist = entry.histogram
            for left, right, count in zip(hist.edges[:-1], hist.edges[1:], hist.counts):
                fh.write(
                    f"{entry.measure},{entry.group},{entry.state},"
                    f"{_fmt(left)},{_fmt(right)},{int(count)}\n")
    return out


# ----------------------------------------------------------------------
# Report reading (for `clusternet report` and downstream tooling)
# ----------------------------------------------------------------------

def read_manifest(run_dir) -> dict:
    path = Path(run_dir) / MANIFEST_NAME
    if not path.is_file():
        raise FileNotFoundError(f"missing {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_moments(run_dir) -> dict:
    path = Path(run_dir) / MOMENTS_NAME
    if not path.is_file():
        raise FileNotFoundError(f"missing {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
