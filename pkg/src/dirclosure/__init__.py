"""Directed triadic-closure analytics.

Head-based directed closure coefficients (local, average, global),
center-based directed clustering coefficients, configuration-model
expectations and swap sampling, an extremal four-class construction, and
per-node feature export.
"""

from .analysis import (
    CorrelationMatrix,
    closure_correlation_matrix,
    edge_label_tallies,
    export_features,
    read_labels,
    summary_report,
)
from .closure import (
    ALL_KEYS,
    SYMMETRIC_PAIRS,
    WEDGE_TYPES,
    CoefficientKey,
    NodeClosureProfile,
    average_closure,
    check_symmetry,
    closed_wedge_count,
    closure_profiles,
    global_closure,
    local_closure,
    wedge_count,
)
from .clustering import (
    NodeClusteringProfile,
    clustering_profiles,
    local_clustering,
    mean_clustering,
)
from .extremal import ExtremalSpec, build_extremal, claimed_io_closure, node_classes
from .graph import (
    IN,
    OUT,
    DegreeMoments,
    DirectedGraph,
    Direction,
    EdgeListFormatError,
    LoadWarnings,
    degree_moments,
    load_edge_list,
    write_edge_list,
    write_id_map,
)
from .nullmodel import (
    CountMode,
    EdgeSwapState,
    NullModelReport,
    SwapChainConfig,
    SwapResult,
    default_attempts,
    double_edge_swap,
    expected_average_closure,
    expected_clustering,
    expected_global_closure,
    expected_local_closure,
    run_null_experiment,
    run_swap_chain,
    sample_configuration_model,
    sample_seed,
)

__version__ = "0.1.0"
