"""Triangle-motif Kronecker graph generation and analysis.

Hyperedges of an n^r-node space are sampled cell by cell from the
r-fold Kronecker power of a small initiator tensor, without ever
materializing the power, then expanded into undirected triangles or
signed feed-forward motifs.
"""
from .analytics import (
    EdgeExpectation,
    GeneralParams222,
    PowerSums,
    expected_duplicates,
    expected_edges_approx,
    expected_edges_exact_small,
    face_pair_sum,
    power_sums,
    sum_star_2,
    sum_star_3,
)
from .graph import (
    GraphStats,
    SignedDigraph,
    SimpleGraph,
    assemble_ffl,
    assemble_triangles,
    count_ffls,
    degree_histogram,
    degree_histogram_by_parity,
    global_clustering,
    graph_stats,
    largest_component,
    mean_local_clustering,
    triangle_count,
)
from .rng import RngSpec, derive_seed
from .sampler import (
    EdgeSample,
    HyperedgeList,
    NoisyLevels,
    cell_inclusion_counts,
    make_noisy_kron_levels,
    make_noisy_levels,
    sample_erdos_renyi,
    sample_hyperedges,
    sample_hyperedges_naive,
    sample_hyperedges_noisy,
    sample_kronecker_edges,
)
from .tensor import (
    InitiatorTensor,
    ModelParams,
    expected_hyperedge_count,
    kron_power_dense,
    kron_power_entry,
    kron_power_slice,
    solve_param_for_density,
    vectorize,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeExpectation",
    "EdgeSample",
    "GeneralParams222",
    "GraphStats",
    "HyperedgeList",
    "InitiatorTensor",
    "ModelParams",
    "NoisyLevels",
    "PowerSums",
    "RngSpec",
    "SignedDigraph",
    "SimpleGraph",
    "assemble_ffl",
    "assemble_triangles",
    "cell_inclusion_counts",
    "count_ffls",
    "degree_histogram",
    "degree_histogram_by_parity",
    "derive_seed",
    "expected_duplicates",
    "expected_edges_approx",
    "expected_edges_exact_small",
    "expected_hyperedge_count",
    "face_pair_sum",
    "global_clustering",
    "graph_stats",
    "kron_power_dense",
    "kron_power_entry",
    "kron_power_slice",
    "largest_component",
    "make_noisy_kron_levels",
    "make_noisy_levels",
    "mean_local_clustering",
    "power_sums",
    "sample_erdos_renyi",
    "sample_hyperedges",
    "sample_hyperedges_naive",
    "sample_hyperedges_noisy",
    "sample_kronecker_edges",
    "solve_param_for_density",
    "sum_star_2",
    "sum_star_3",
    "triangle_count",
    "vectorize",
]
