"""
Closed-form theory of clustering in the Geometric Block Model.
"""

from .regimes import (
    Regime,
    TwoPathPattern,
    classify_regime,
    triangle_prob,
    triangle_prob_for_labels,
    twopath_prob,
)
from .limits import (
    RGG_LIMIT,
    LimitEval,
    global_cc_limit,
    avg_cc_limit,
    balanced_limit,
    g_of,
    f_of,
    h_of,
    lambda_star,
    evaluate_limits,
    evaluate_lambda_limits,
)
from .expectations import (
    expected_degree,
    expected_ordered_sums,
    exact_ordered_sums,
    expected_node_triangle_sum,
    exact_node_triangle_sum,
    average_limit_from_nodes,
)

__all__ = [
    'Regime',
    'TwoPathPattern',
    'classify_regime',
    'triangle_prob',
    'triangle_prob_for_labels',
    'twopath_prob',
    'RGG_LIMIT',
    'LimitEval',
    'global_cc_limit',
    'avg_cc_limit',
    'balanced_limit',
    'g_of',
    'f_of',
    'h_of',
    'lambda_star',
    'evaluate_limits',
    'evaluate_lambda_limits',
    'expected_degree',
    'expected_ordered_sums',
    'exact_ordered_sums',
    'expected_node_triangle_sum',
    'exact_node_triangle_sum',
    'average_limit_from_nodes',
]
