"""Network generators, binary measures, and the edge-list format."""

import numpy as np
import pytest

from clusternet import (
    ImprintedNetwork,
    ModelSpec,
    ParameterError,
    ValidationError,
    bfs_distances,
    binary_clustering,
    binary_degree,
    distance_groups,
    generate,
    highest_degree_node,
    neighbor_subnetwork,
)
from clusternet.graphgen import (
    distance_group_labels,
    from_edgelist_text,
    to_edgelist_text,
)

from conftest import random_model_spec


def ring(n: int, k: int = 1) -> ImprintedNetwork:
    return generate(ModelSpec("ws", n, seed=0, k=k, p=0.0))


def path_graph(n: int) -> ImprintedNetwork:
    a = np.zeros((n, n), dtype=int)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1
    return ImprintedNetwork(n, a)


def star_graph(n: int, center: int = 0) -> ImprintedNetwork:
    a = np.zeros((n, n), dtype=int)
    for i in range(n):
        if i != center:
            a[center, i] = a[i, center] = 1
    return ImprintedNetwork(n, a)


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------

def test_ws_mean_degree_is_exactly_2k():
    net = generate(ModelSpec("ws", 100, seed=5, k=2, p=0.2))
    assert binary_degree(net).mean() == 4.0


def test_ba_three_nodes_m1_is_a_two_edge_tree():
    for seed in range(20):
        net = generate(ModelSpec("ba", 3, seed=seed, m=1))
        assert binary_degree(net).sum() == 4  # 2 edges


def test_ws_ring_k2_degree_and_clustering():
    # k=2 ring: each node has degree 4; of its C(4,2)=6 neighbor pairs
    # exactly 3 are edges, so clustering is 1/2 everywhere.
    net = ring(10, k=2)
    assert np.all(binary_degree(net) == 4)
    assert np.allclose(binary_clustering(net), 0.5)


def test_generate_rejects_bad_params():
    with pytest.raises(ParameterError):
        ModelSpec("ba", 5, m=5)
    with pytest.raises(ParameterError):
        ModelSpec("ws", 10, k=5, p=0.1)
    with pytest.raises(ParameterError):
        ModelSpec("ws", 10, k=2, p=1.5)
    with pytest.raises(ParameterError):
        ModelSpec("er", 10, p=-0.1)
    with pytest.raises(ParameterError):
        ModelSpec("triangle", 10)


def test_generate_is_deterministic():
    spec = ModelSpec("ws", 60, seed=99, k=3, p=0.4)
    assert np.array_equal(generate(spec).adjacency, generate(spec).adjacency)
    spec = ModelSpec("ba", 60, seed=99, m=2)
    assert np.array_equal(generate(spec).adjacency, generate(spec).adjacency)


def test_generated_networks_satisfy_invariants():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        net = generate(random_model_spec(rng, n_lo=3, n_hi=25))
        a = net.adjacency
        assert np.array_equal(a, a.T)
        assert np.all(np.diag(a) == 0)
        assert np.isin(a, (0, 1)).all()


def test_ws_edge_count_preserved_by_rewiring():
    for p in (0.0, 0.3, 1.0):
        for seed in range(10):
            net = generate(ModelSpec("ws", 40, seed=seed, k=3, p=p))
            assert binary_degree(net).sum() == 2 * 40 * 3


def test_ba_m1_is_connected_acyclic_tree():
    for seed in range(25):
        net = generate(ModelSpec("ba", 50, seed=seed, m=1))
        assert binary_degree(net).sum() == 2 * 49  # 49 edges
        assert np.isfinite(bfs_distances(net, 0)).all()  # connected
        assert np.all(binary_clustering(net) == 0.0)


# ----------------------------------------------------------------------
# binary measures
# ----------------------------------------------------------------------

def test_complete_graph_degrees_and_clustering():
    net = generate(ModelSpec("complete", 100))
    assert np.all(binary_degree(net) == 99)
    assert np.allclose(binary_clustering(net), 1.0)


def test_single_node_degree_zero():
    net = generate(ModelSpec("complete", 1))
    assert binary_degree(net).tolist() == [0]


def test_ba_m1_degree_sum_is_tree_handshake():
    net = generate(ModelSpec("ba", 100, seed=3, m=1))
    assert binary_degree(net).sum() == 198


def test_isolated_edge_clustering_zero():
    a = np.array([[0, 1], [1, 0]])
    assert np.all(binary_clustering(ImprintedNetwork(2, a)) == 0.0)


# ----------------------------------------------------------------------
# distances and sub-network structure
# ----------------------------------------------------------------------

def test_bfs_distance_examples():
    net = ring(6, k=1)
    assert bfs_distances(net, 0).tolist() == [0, 1, 2, 3, 2, 1]
    assert bfs_distances(net, 0)[0] == 0

    two = ImprintedNetwork(2, np.zeros((2, 2), dtype=int))
    dist = bfs_distances(two, 0)
    assert dist[0] == 0 and np.isinf(dist[1])


def test_bfs_symmetric_pairwise():
    net = generate(ModelSpec("ws", 30, seed=2, k=2, p=0.3))
    d0 = bfs_distances(net, 0)
    for other in range(1, 30):
        assert bfs_distances(net, other)[0] == d0[other]


def test_distance_groups_star_ring_complete():
    star = star_graph(7, center=3)
    groups = distance_groups(star, 3)
    assert groups[0].tolist() == [3]
    assert sorted(groups[1].tolist()) == [0, 1, 2, 4, 5, 6]
    assert groups[2].size == 0 and groups[3].size == 0

    groups = distance_groups(ring(6, k=1), 0)
    assert groups[0].tolist() == [0]
    assert groups[1].tolist() == [1, 5]
    assert groups[2].tolist() == [2, 4]
    assert groups[3].tolist() == [3]

    complete = generate(ModelSpec("complete", 5))
    groups = distance_groups(complete, 2)
    assert groups[0].tolist() == [2]
    assert sorted(groups[1].tolist()) == [0, 1, 3, 4]


def test_distance_groups_partition_all_nodes():
    rng = np.random.default_rng(11)
    for _ in range(50):
        net = generate(random_model_spec(rng, n_lo=3, n_hi=30))
        source = int(rng.integers(net.n))
        groups = distance_groups(net, source)
        pooled = np.concatenate([groups[g] for g in (0, 1, 2, 3)])
        assert sorted(pooled.tolist()) == list(range(net.n))


def test_unreachable_nodes_fall_in_far_group():
    a = np.zeros((4, 4), dtype=int)
    a[0, 1] = a[1, 0] = 1
    labels = distance_group_labels(ImprintedNetwork(4, a), 0)
    assert labels.tolist() == [0, 1, 3, 3]


def test_neighbor_subnetwork_tree_complete_triangle():
    tree = generate(ModelSpec("ba", 30, seed=5, m=1))
    for source in (0, 10, 29):
        _, _, counts = neighbor_subnetwork(tree, source)
        assert np.all(counts == 0)

    complete = generate(ModelSpec("complete", 100))
    neighbors, _, counts = neighbor_subnetwork(complete, 17)
    assert neighbors.size == 99 and np.all(counts == 98)

    triangle = generate(ModelSpec("complete", 3))
    _, _, counts = neighbor_subnetwork(triangle, 0)
    assert counts.tolist() == [1, 1]
    assert 0 <= counts.max() <= binary_degree(triangle)[0] - 1


def test_highest_degree_node():
    assert highest_degree_node(star_graph(9, center=3)) == 3
    assert highest_degree_node(generate(ModelSpec("complete", 10))) == 0  # tie-break
    assert highest_degree_node(path_graph(3)) == 1


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def test_edgelist_roundtrip():
    net = generate(ModelSpec("ws", 25, seed=8, k=2, p=0.5))
    text = to_edgelist_text(net)
    assert text.startswith("n=25\n")
    back = from_edgelist_text(text)
    assert np.array_equal(back.adjacency, net.adjacency)


def test_edgelist_rejects_bad_header():
    with pytest.raises(ValidationError):
        from_edgelist_text("0 1\n")


def test_network_validation():
    with pytest.raises(ValidationError):
        ImprintedNetwork(2, np.array([[0, 1], [0, 0]]))  # not symmetric
    with pytest.raises(ValidationError):
        ImprintedNetwork(2, np.array([[1, 1], [1, 0]]))  # diagonal
    with pytest.raises(ValidationError):
        ImprintedNetwork(2, np.array([[0, 2], [2, 0]]))  # not binary
