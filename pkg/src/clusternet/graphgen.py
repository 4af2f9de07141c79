"""Imprinted-network topologies and binary graph measures.

The imprinted network is the pattern of entangling gates that builds the
cluster state: one node per optical mode, one edge per C_Z gate.  Generators
cover the Barabási–Albert (preferential attachment), Watts–Strogatz (ring
rewiring), Erdős–Rényi and complete models.  All measures work directly on
the binary adjacency matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ValidationError

MODEL_KINDS = ("ba", "ws", "er", "complete")

#: Label used for the shortest-path group that pools distance >= 3 nodes
#: together with unreachable ones.
FAR_GROUP = 3


@dataclass
class ImprintedNetwork:
    """Undirected, unweighted graph given by its 0/1 adjacency matrix."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=np.int64)
        if a.shape != (self.n, self.n):
            raise ValidationError(f"adjacency must be {self.n}x{self.n}, got {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValidationError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValidationError("adjacency diagonal must be zero")
        if not np.isin(a, (0, 1)).all():
            raise ValidationError("adjacency entries must be 0 or 1")
        self.adjacency = a

    def edges(self) -> list[tuple[int, int]]:
        """Edge list as (i, j) pairs with i < j."""
        ii, jj = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(ii.tolist(), jj.tolist()))

    def neighbor_lists(self) -> list[list[int]]:
        """Per-node sorted neighbor lists (used in run manifests)."""
        return [np.nonzero(row)[0].tolist() for row in self.adjacency]


@dataclass
class ModelSpec:
    """Parameters of one network model realization.

    ``kind`` selects the model: ``ba`` (attach ``m`` edges per new node),
    ``ws`` (ring with ``k`` neighbors per side, rewiring probability ``p``),
    ``er`` (edge probability ``p``) or ``complete``.
    """

    kind: str
    n: int
    seed: int = 0
    m: int | None = None
    k: int | None = None
    p: float | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.kind not in MODEL_KINDS:
            raise ParameterError(f"unknown model kind {self.kind!r}")
        if self.n < 1:
            raise ParameterError(f"node count must be >= 1, got {self.n}")
        if self.kind == "ba":
            if self.m is None or not 1 <= self.m < self.n:
                raise ParameterError(f"ba requires 1 <= m < n, got m={self.m}, n={self.n}")
        elif self.kind == "ws":
            if self.k is None or not 1 <= self.k < self.n / 2:
                raise ParameterError(f"ws requires 1 <= k < n/2, got k={self.k}, n={self.n}")
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ParameterError(f"ws requires 0 <= p <= 1, got p={self.p}")
        elif self.kind == "er":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ParameterError(f"er requires 0 <= p <= 1, got p={self.p}")


def generate(spec: ModelSpec) -> ImprintedNetwork:
    """Generate a network realization; deterministic in ``spec.seed``."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "ba":
        adjacency = _generate_ba(spec.n, spec.m, rng)
    elif spec.kind == "ws":
        adjacency = _generate_ws(spec.n, spec.k, spec.p, rng)
    elif spec.kind == "er":
        adjacency = _generate_er(spec.n, spec.p, rng)
    else:
        adjacency = np.ones((spec.n, spec.n), dtype=np.int64) - np.eye(spec.n, dtype=np.int64)
    return ImprintedNetwork(spec.n, adjacency)


def _generate_ba(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Preferential attachment starting from a complete graph on m+1 nodes.

    Each new node attaches ``m`` edges to distinct existing nodes drawn with
    probability proportional to their current degree (repeated-nodes urn).
    The complete seed keeps the output connected for every draw.
    """
    a = np.zeros((n, n), dtype=np.int64)
    seed_size = min(m + 1, n)
    a[:seed_size, :seed_size] = 1
    np.fill_diagonal(a, 0)
    # Urn with each node repeated once per unit of degree.
    urn: list[int] = [v for v in range(seed_size) for _ in range(seed_size - 1)]
    for v in range(seed_size, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(urn[rng.integers(len(urn))])
        for t in targets:
            a[v, t] = a[t, v] = 1
            urn.append(t)
        urn.extend([v] * m)
    return a


def _generate_ws(n: int, k: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Ring lattice (each node linked to its k nearest neighbors per side)
    with each edge's far endpoint rewired with probability ``p``.

    Edges are visited in lattice order (ring offset, then node index); a
    rewire draws a uniform replacement excluding self-loops and duplicates,
    so the total edge count n*k is preserved exactly.
    """
    a = np.zeros((n, n), dtype=np.int64)
    for j in range(1, k + 1):
        for i in range(n):
            a[i, (i + j) % n] = a[(i + j) % n, i] = 1
    for j in range(1, k + 1):
        for i in range(n):
            old = (i + j) % n
            if rng.random() >= p:
                continue
            if a[i].sum() >= n - 1:  # node already linked to everyone
                continue
            new = int(rng.integers(n))
            while new == i or a[i, new] == 1:
                new = int(rng.integers(n))
            a[i, old] = a[old, i] = 0
            a[i, new] = a[new, i] = 1
    return a


def _generate_er(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    draws = rng.random((n, n))
    upper = np.triu(draws < p, k=1).astype(np.int64)
    return upper + upper.T


def binary_degree(net: ImprintedNetwork) -> np.ndarray:
    """Per-node degree (row sums of the adjacency matrix)."""
    return net.adjacency.sum(axis=1)


def binary_clustering(net: ImprintedNetwork) -> np.ndarray:
    """Per-node clustering: triangles through the node over its triplets.

    Nodes of degree < 2 have no triplets and get clustering 0.
    """
    a = net.adjacency
    triangle_paths = np.einsum("ij,jk,ki->i", a, a, a)  # = 2 * triangles
    deg = a.sum(axis=1)
    triplets = deg * (deg - 1)
    out = np.zeros(net.n, dtype=float)
    mask = deg >= 2
    out[mask] = triangle_paths[mask] / triplets[mask]
    return out


def bfs_distances(net: ImprintedNetwork, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable nodes get ``inf``."""
    if not 0 <= source < net.n:
        raise ParameterError(f"source {source} outside 0..{net.n - 1}")
    dist = np.full(net.n, np.inf)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in np.nonzero(net.adjacency[u])[0]:
            if np.isinf(dist[v]):
                dist[v] = dist[u] + 1
                queue.append(int(v))
    return dist


def distance_group_labels(net: ImprintedNetwork, source: int) -> np.ndarray:
    """Per-node group label: 0, 1, 2, or FAR_GROUP for distance >= 3."""
    dist = bfs_distances(net, source)
    labels = np.full(net.n, FAR_GROUP, dtype=np.int64)
    for g in (0, 1, 2):
        labels[dist == g] = g
    return labels


def distance_groups(net: ImprintedNetwork, source: int) -> dict[int, np.ndarray]:
    """Partition of the nodes by distance from ``source``: {0},{1},{2},{>=3}."""
    labels = distance_group_labels(net, source)
    return {g: np.nonzero(labels == g)[0] for g in (0, 1, 2, FAR_GROUP)}


def neighbor_subnetwork(net: ImprintedNetwork, source: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Induced subgraph on the neighbors of ``source``.

    Returns ``(neighbors, sub_adjacency, counts)`` where ``counts[v]`` is the
    number of edges neighbor ``neighbors[v]`` has to the other neighbors.
    """
    if not 0 <= source < net.n:
        raise ParameterError(f"source {source} outside 0..{net.n - 1}")
    neighbors = np.nonzero(net.adjacency[source])[0]
    sub = net.adjacency[np.ix_(neighbors, neighbors)]
    return neighbors, sub, sub.sum(axis=1)


def highest_degree_node(net: ImprintedNetwork) -> int:
    """Index of a maximal-degree node; ties broken by smallest index."""
    return int(np.argmax(binary_degree(net)))


# ----------------------------------------------------------------------
# Serialization: edge-list text format
# ----------------------------------------------------------------------

def to_edgelist_text(net: ImprintedNetwork) -> str:
    """Render as the edge-list format: header ``n=<N>``, then ``i j`` lines."""
    lines = [f"n={net.n}"]
    lines.extend(f"{i} {j}" for i, j in net.edges())
    return "\n".join(lines) + "\n"


def from_edgelist_text(text: str) -> ImprintedNetwork:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValidationError("edge list must start with an 'n=<N>' header")
    n = int(lines[0][2:])
    a = np.zeros((n, n), dtype=np.int64)
    for ln in lines[1:]:
        i_str, j_str = ln.split()
        i, j = int(i_str), int(j_str)
        if not (0 <= i < j < n):
            raise ValidationError(f"bad edge line {ln!r}: need 0 <= i < j < n")
        a[i, j] = a[j, i] = 1
    return ImprintedNetwork(n, a)


def write_edgelist(net: ImprintedNetwork, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edgelist_text(net))


def read_edgelist(path) -> ImprintedNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        return from_edgelist_text(fh.read())
