"""Read-only access to clusternet run directories.

The contract is the documented file schema: ``samples.csv`` with columns
``realization,node,group_distance,nn_connectivity,state,degree,clustering``,
plus ``manifest.json`` and ``moments.json``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SAMPLE_COLUMNS = (
    "realization", "node", "group_distance", "nn_connectivity",
    "state", "degree", "clustering",
)

#: distance-group code used for nodes at distance >= 3 (or unreachable)
FAR_CODE = 3


class SchemaError(ValueError):
    """A run file does not match the documented schema."""


@dataclass
class RunData:
    path: Path
    manifest: dict
    state: np.ndarray          # str per row
    distance: np.ndarray       # int per row, -1 where absent
    nn_connectivity: np.ndarray  # int per row, -1 where absent
    degree: np.ndarray
    clustering: np.ndarray

    def measure(self, name: str) -> np.ndarray:
        if name not in ("degree", "clustering"):
            raise SchemaError(f"unknown measure {name!r}")
        return getattr(self, name)

    def states(self) -> list[str]:
        seen = []
        for s in self.state:
            if s not in seen:
                seen.append(s)
        return seen

    def has_subtraction(self) -> bool:
        return bool(np.any(self.distance >= 0))

    def samples(self, state: str, measure: str, mask: np.ndarray | None = None) -> np.ndarray:
        pick = self.state == state
        if mask is not None:
            pick &= mask
        return self.measure(measure)[pick]

    def label(self) -> str:
        model = self.manifest.get("model", {})
        kind = model.get("kind", "?")
        parts = [f"n={model.get('n', '?')}"]
        for key in ("m", "k", "p"):
            if key in model:
                parts.append(f"{key}={model[key]}")
        sub = self.manifest.get("subtraction", {})
        tail = ""
        if sub.get("kind", "none") != "none":
            tail = f", {sub['kind']}:{sub['photons']}"
        return f"{kind}({', '.join(parts)}{tail})"


def load_run(run_dir) -> RunData:
    """Load one run directory; missing files or columns raise errors."""
    run = Path(run_dir)
    manifest_path = run / "manifest.json"
    samples_path = run / "samples.csv"
    for path in (manifest_path, samples_path):
        if not path.is_file():
            raise FileNotFoundError(f"missing {path}")
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)

    with open(samples_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for column in SAMPLE_COLUMNS:
            if column not in fields:
                raise SchemaError(f"samples.csv is missing column '{column}'")
        state, distance, nn_conn, degree, clustering = [], [], [], [], []
        for row in reader:
            state.append(row["state"])
            distance.append(int(row["group_distance"]) if row["group_distance"] else -1)
            nn_conn.append(int(row["nn_connectivity"]) if row["nn_connectivity"] else -1)
            degree.append(float(row["degree"]))
            clustering.append(float(row["clustering"]))

    return RunData(
        path=run,
        manifest=manifest,
        state=np.array(state),
        distance=np.array(distance, dtype=int),
        nn_connectivity=np.array(nn_conn, dtype=int),
        degree=np.array(degree),
        clustering=np.array(clustering),
    )


def load_moments(run_dir) -> dict:
    path = Path(run_dir) / "moments.json"
    if not path.is_file():
        raise FileNotFoundError(f"missing {path}")
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if "groups" not in obj:
        raise SchemaError("moments.json is missing the 'groups' object")
    return obj
