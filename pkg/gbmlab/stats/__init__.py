"""
Exact graph statistics: triangles, 2-paths and clustering coefficients.
"""

from .clustering import ClusteringStats, compute_stats, brute_force_stats, empirical_sums, ORACLE_CAP

__all__ = ['ClusteringStats', 'compute_stats', 'brute_force_stats', 'empirical_sums', 'ORACLE_CAP']
