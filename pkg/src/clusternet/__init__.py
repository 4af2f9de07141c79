"""Emergent photon-number correlation networks of CV cluster states.

Build Gaussian cluster states on imprinted complex-network topologies,
apply repeated single-mode photon subtraction, and characterise the
emergent weighted network of photon-number correlations with complex-network
measures (weighted degree and clustering), at single-state and ensemble
level.
"""

__version__ = "0.1.0"

from .emergent import (
    EmergentNetwork,
    PhotonMoments,
    correlation_network,
    subtracted_tag,
    weighted_clustering,
    weighted_degree,
)
from .ensemble import (
    EnsembleReport,
    ExperimentSpec,
    MomentSummary,
    SubtractionPlan,
    histogram,
    moments,
    run_experiment,
)
from .errors import (
    CapacityError,
    ClusternetError,
    DegenerateSubtractionError,
    DegenerateVarianceError,
    InternalConsistencyError,
    ParameterError,
    ValidationError,
)
from .gaussian import (
    ContractionTable,
    CovarianceMatrix,
    SqueezingParam,
    cluster_covariance,
    gaussian_emergent,
    gaussian_mean_photon,
    gaussian_photon_covariance,
    pair_contractions,
    squeezing_from_db,
    squeezing_from_linear,
)
from .graphgen import (
    ImprintedNetwork,
    ModelSpec,
    bfs_distances,
    binary_clustering,
    binary_degree,
    distance_groups,
    generate,
    highest_degree_node,
    neighbor_subnetwork,
)
from .wick import (
    SubtractionSpec,
    active_backend,
    locality_filter,
    photon_number_moments,
    subtracted_expectation,
    subtracted_photon_moments,
    wick_expectation,
    wick_expectation_bruteforce,
)

__all__ = [name for name in dir() if not name.startswith("_")]
