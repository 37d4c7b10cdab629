"""
Numerical oracle for the conditional triangle and 2-path probabilities.
"""

from .quadrature import (
    QuadratureConfig,
    OracleCase,
    OracleReport,
    triangle_prob_quadrature,
    twopath_prob_quadrature,
    anchor_invariance_check,
    run_oracle_suite,
)

__all__ = [
    'QuadratureConfig',
    'OracleCase',
    'OracleReport',
    'triangle_prob_quadrature',
    'twopath_prob_quadrature',
    'anchor_invariance_check',
    'run_oracle_suite',
]
