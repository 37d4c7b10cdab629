"""
gbmlab: clustering coefficients of the Geometric Block Model.

Sample graphs on the unit circle with two communities, count their triangles
and 2-paths exactly, and compare the clustering coefficients with their
closed-form large-n limits.
"""

from .core import (
    GbmError,
    ParameterError,
    RadiusOrderError,
    Community,
    GbmParams,
    validate_params,
    SampledGraph,
    AdjacencyList,
    sample_graph,
    build_adjacency,
)
from .stats import ClusteringStats, compute_stats, brute_force_stats
from .theory import Regime, classify_regime, global_cc_limit, avg_cc_limit, g_of, f_of, h_of, lambda_star
from .experiments import ExperimentConfig, run_experiment, convergence_study

__version__ = "0.1.0"

__all__ = [
    'GbmError',
    'ParameterError',
    'RadiusOrderError',
    'Community',
    'GbmParams',
    'validate_params',
    'SampledGraph',
    'AdjacencyList',
    'sample_graph',
    'build_adjacency',
    'ClusteringStats',
    'compute_stats',
    'brute_force_stats',
    'Regime',
    'classify_regime',
    'global_cc_limit',
    'avg_cc_limit',
    'g_of',
    'f_of',
    'h_of',
    'lambda_star',
    'ExperimentConfig',
    'run_experiment',
    'convergence_study',
]
