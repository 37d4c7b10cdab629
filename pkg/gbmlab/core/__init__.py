from .errors import (
    GbmError,
    ParameterError,
    RadiusOrderError,
    InfeasibleCellError,
    QuadratureConfigError,
    OracleCapError,
    ConfigError,
    GraphFormatError,
)
from .params import Community, GbmParams, Radii, RadiusRule, validate_params, radius_for_rule
from .geometry import periodic_distance, edge_indicator
from .graph import (
    SampledGraph,
    AdjacencyList,
    sample_graph,
    build_adjacency,
    brute_force_adjacency,
    pairwise_indicator,
)
from .dump import write_graph_dump, read_graph_dump

__all__ = [
    'GbmError',
    'ParameterError',
    'RadiusOrderError',
    'InfeasibleCellError',
    'QuadratureConfigError',
    'OracleCapError',
    'ConfigError',
    'GraphFormatError',
    'Community',
    'GbmParams',
    'Radii',
    'RadiusRule',
    'validate_params',
    'radius_for_rule',
    'periodic_distance',
    'edge_indicator',
    'SampledGraph',
    'AdjacencyList',
    'sample_graph',
    'build_adjacency',
    'brute_force_adjacency',
    'pairwise_indicator',
    'write_graph_dump',
    'read_graph_dump',
]
