"""Algebraic distances between graph vertices via damped relaxation sweeps.

Run a handful of Jacobi over-relaxation sweeps from random starts on the
graph's weighted Laplacian; the surviving differences |x_i - x_j| measure
how strongly vertices are connected.  The package computes these distances,
analyzes their convergence (iteration matrices, pencil eigenpairs, rate
curves, stability bounds), and applies them as surrogate weights in
maximum-weight matching heuristics and hypergraph bisection.
"""

__version__ = "0.1.0"

from .distance import (DistanceField, edge_distances, normalized_distance,
                       pair_distance)
from .graph import (BipartiteExpansion, Graph, Hypergraph, bipartite_expand,
                    build_graph, build_hypergraph,
                    hypergraph_largest_component, is_bipartite, is_connected,
                    largest_component)
from .hpart import (ExternalPartitionResult, HpartReport, HyperedgeDistances,
                    Partition, PartitionerError, evaluate_cut,
                    external_partition, fallback_bisect, hpart_experiment,
                    hyperedge_distances, invert_weights, scale_weights_to_int)
from .io import (ParseError, format_float, parse_hgr, parse_matrix_market,
                 write_distance_csv, write_hgr, write_matrix_market)
from .matching import (Matching, MatchingReport, SurrogateWeights,
                       brute_force_matching, greedy_matching,
                       matching_experiment, matching_preprocess,
                       path_growing_matching)
from .relax import (PRNG_NAME, IterateSet, RelaxationConfig, StabilityReport,
                    iteration_matrix, jor_sweep, model_residual, relax,
                    stability_report)
from .spectral import (DENSE_CAP, PencilEigen, dense_eigen, pencil_eigen,
                       spectral_radius, theta_curve)

__all__ = [
    "__version__",
    # graph
    "Graph", "Hypergraph", "BipartiteExpansion", "build_graph",
    "build_hypergraph", "bipartite_expand", "is_connected", "is_bipartite",
    "largest_component", "hypergraph_largest_component",
    # relax
    "PRNG_NAME", "RelaxationConfig", "IterateSet", "StabilityReport",
    "jor_sweep", "relax", "iteration_matrix", "stability_report",
    "model_residual",
    # distance
    "DistanceField", "pair_distance", "edge_distances", "normalized_distance",
    # spectral
    "DENSE_CAP", "PencilEigen", "pencil_eigen", "theta_curve", "dense_eigen",
    "spectral_radius",
    # matching
    "Matching", "SurrogateWeights", "MatchingReport", "matching_preprocess",
    "greedy_matching", "path_growing_matching", "brute_force_matching",
    "matching_experiment",
    # hpart
    "Partition", "HyperedgeDistances", "HpartReport", "PartitionerError",
    "ExternalPartitionResult", "hyperedge_distances", "invert_weights",
    "evaluate_cut", "scale_weights_to_int", "external_partition",
    "fallback_bisect", "hpart_experiment",
    # io
    "ParseError", "parse_matrix_market", "write_matrix_market",
    "write_distance_csv",
    "format_float", "parse_hgr",
    "write_hgr",
]
