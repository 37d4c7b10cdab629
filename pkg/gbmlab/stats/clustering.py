"""
Clustering Module

This module computes triangle counts, 2-path sums and both clustering
coefficients of a graph, along with an all-triples oracle for them.

Conventions:
    - node_triangles[i] is the ordered sum over j != k of A_ij A_jk A_ki,
      i.e. twice the number of triangles through i.
    - Nodes of degree 0 or 1 have local coefficient 0 and still count in the
      average's denominator n.
    - The global coefficient is undefined (None) when the graph has no 2-path.
"""

import math
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..core.errors import OracleCapError, ParameterError
from ..core.graph import AdjacencyList, SampledGraph, pairwise_indicator
from ..core.params import Community
from ..core.tracing import traced

# Configure logging
logger = logging.getLogger(__name__)

ORACLE_CAP = 512
TRIANGLE_CHUNK_ROWS = 2048


@dataclass(frozen=True, eq=False)
class ClusteringStats:
    """
    Exact clustering statistics of one graph.

    Attributes:
        triangle_count (int): Unordered triangle count T
        twopath_sum (int): Sum of d_i (d_i - 1), the ordered 2-path count
        degrees (np.ndarray): Per-node degree
        node_triangles (np.ndarray): Per-node ordered triangle sum (2x triangles at the node)
        local_cc (np.ndarray): Per-node local coefficient
        global_cc (Optional[float]): 6T / twopath_sum, None when undefined
        average_cc (float): Mean local coefficient over all n nodes
    """
    triangle_count: int
    twopath_sum: int
    degrees: np.ndarray
    node_triangles: np.ndarray
    local_cc: np.ndarray
    global_cc: Optional[float]
    average_cc: float

    @property
    def n(self) -> int:
        return int(self.degrees.shape[0])

    @property
    def global_undefined(self) -> bool:
        return self.global_cc is None

    @property
    def ordered_triangle_sum(self) -> int:
        return 6 * self.triangle_count

    def mean_degree_by_community(self, labels: np.ndarray) -> Dict[Community, float]:
        """Mean degree of each community that has at least one node."""
        means = {}
        for community in Community:
            members = self.degrees[labels == community]
            if members.size:
                means[community] = math.fsum(members.tolist()) / members.size
        return means

    def node_triangles_by_community(self, labels: np.ndarray) -> Dict[Community, float]:
        """Mean ordered per-node triangle sum of each non-empty community."""
        means = {}
        for community in Community:
            members = self.node_triangles[labels == community]
            if members.size:
                means[community] = math.fsum(members.tolist()) / members.size
        return means


def _finalize(degrees: np.ndarray, node_triangles: np.ndarray, node_twopaths: np.ndarray) -> ClusteringStats:
    degrees = np.asarray(degrees, dtype=np.int64)
    node_triangles = np.asarray(node_triangles, dtype=np.int64)
    node_twopaths = np.asarray(node_twopaths, dtype=np.int64)

    ordered_triangles = int(node_triangles.sum())
    twopath_sum = int(node_twopaths.sum())
    if ordered_triangles % 6:
        raise ArithmeticError(f"ordered triangle sum {ordered_triangles} is not a multiple of 6")

    local_cc = np.zeros(degrees.shape[0], dtype=np.float64)
    qualified = node_twopaths > 0
    np.divide(node_triangles, node_twopaths, out=local_cc, where=qualified)

    n = degrees.shape[0]
    average_cc = math.fsum(local_cc.tolist()) / n if n else 0.0
    global_cc = ordered_triangles / twopath_sum if twopath_sum > 0 else None
    if global_cc is None:
        logger.debug("No 2-paths: global clustering coefficient undefined")

    return ClusteringStats(
        triangle_count=ordered_triangles // 6,
        twopath_sum=twopath_sum,
        degrees=degrees,
        node_triangles=node_triangles,
        local_cc=local_cc,
        global_cc=global_cc,
        average_cc=average_cc,
    )


def _node_triangles(adjacency: AdjacencyList, chunk_rows: int = TRIANGLE_CHUNK_ROWS) -> np.ndarray:
    # row i of (A @ A) * A sums |N(i) & N(j)| over neighbors j; one row block at a time
    if chunk_rows < 1:
        raise ParameterError(f"chunk_rows must be >= 1, got {chunk_rows}", field='chunk_rows')
    matrix = adjacency.to_csr()
    counts = np.zeros(adjacency.n, dtype=np.int64)
    for start in range(0, adjacency.n, chunk_rows):
        block = matrix[start:start + chunk_rows]
        closed = (block @ matrix).multiply(block)
        counts[start:start + block.shape[0]] = np.asarray(closed.sum(axis=1), dtype=np.int64).ravel()
    return counts


@traced
def compute_stats(adjacency: AdjacencyList, chunk_rows: int = TRIANGLE_CHUNK_ROWS) -> ClusteringStats:
    """
    Exact statistics from the sorted neighbor lists.

    Args:
        adjacency (AdjacencyList): Symmetric adjacency without self-loops
        chunk_rows (int): Rows per block of the masked two-hop product; bounds peak memory

    Returns:
        ClusteringStats: Triangles, 2-paths and both coefficients
    """
    degrees = adjacency.degrees.astype(np.int64)
    return _finalize(degrees, _node_triangles(adjacency, chunk_rows), degrees * (degrees - 1))


def brute_force_stats(graph: SampledGraph, cap: int = ORACLE_CAP) -> ClusteringStats:
    """
    Evaluate the clustering sums literally over all ordered triples.

    Uses `edge_indicator` directly and shares nothing with `build_adjacency`.

    Raises:
        OracleCapError: When graph.n exceeds cap
    """
    if graph.n > cap:
        raise OracleCapError(f"brute-force oracle capped at n={cap}, got n={graph.n}")
    matrix = pairwise_indicator(graph).astype(np.int64)
    degrees = matrix.sum(axis=1)
    node_triangles = np.einsum('ij,jk,ki->i', matrix, matrix, matrix)
    # sum over j, k of A_ij A_ik minus the j == k terms
    node_twopaths = np.einsum('ij,ik->i', matrix, matrix) - np.einsum('ij,ij->i', matrix, matrix)
    return _finalize(degrees, node_triangles, node_twopaths)


def empirical_sums(adjacency: AdjacencyList) -> Tuple[int, int]:
    """
    The ordered sums the global coefficient is built from.

    Returns:
        (ordered triangle sum 6T, ordered 2-path sum)
    """
    degrees = adjacency.degrees.astype(np.int64)
    return int(_node_triangles(adjacency).sum()), int((degrees * (degrees - 1)).sum())
