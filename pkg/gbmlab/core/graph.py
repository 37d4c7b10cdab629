"""
Graph Module

This module samples Geometric Block Model graphs and materializes their adjacency.

Positions live on the unit circle [0, 1). Node ids are 0-based; ids 0..n1-1
belong to community one and the rest to community two.
"""

import logging
from dataclasses import dataclass
from typing import List, Set, Tuple

import numpy as np
from scipy import sparse

from .errors import ParameterError
from .geometry import edge_indicator
from .params import Community, GbmParams
from .tracing import traced

# Configure logging
logger = logging.getLogger(__name__)

# Sweep windows are widened by this much; the exact rule is applied afterwards.
SWEEP_SLACK = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SampledGraph:
    """
    Latent positions and community labels of one sampled graph.

    Attributes:
        positions (np.ndarray): float64 coordinates in [0, 1)
        labels (np.ndarray): int8 community labels (1 or 2)
        sorted_index (np.ndarray): Node ids ordered by position
        params (GbmParams): Parameters that produced the graph
    """
    positions: np.ndarray
    labels: np.ndarray
    sorted_index: np.ndarray
    params: GbmParams

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    @classmethod
    def from_positions(cls, positions, labels, params: GbmParams) -> 'SampledGraph':
        """
        Build a graph from explicit coordinates and labels.

        Args:
            positions: n coordinates in [0, 1)
            labels: n labels, each 1 or 2, with exactly params.n1 ones
            params: Parameters the graph claims to come from

        Raises:
            ParameterError: On any inconsistency
        """
        positions = np.array(positions, dtype=np.float64)
        labels = np.array(labels, dtype=np.int8)
        if positions.ndim != 1 or positions.shape != labels.shape:
            raise ParameterError("positions and labels must be 1-d arrays of equal length", field='positions')
        if positions.shape[0] != params.n:
            raise ParameterError(f"expected {params.n} positions, got {positions.shape[0]}", field='positions')
        if np.any((positions < 0.0) | (positions >= 1.0)) or not np.all(np.isfinite(positions)):
            raise ParameterError("positions must lie in [0, 1)", field='positions')
        if np.any((labels != Community.ONE) & (labels != Community.TWO)):
            raise ParameterError("labels must be 1 or 2", field='labels')
        n_one = int(np.count_nonzero(labels == Community.ONE))
        if n_one != params.n1:
            raise ParameterError(f"expected {params.n1} community-one labels, got {n_one}", field='labels')
        sorted_index = np.argsort(positions, kind='stable')
        return cls(_frozen(positions), _frozen(labels), _frozen(sorted_index), params)


@dataclass(frozen=True, eq=False)
class AdjacencyList:
    """
    Symmetric adjacency in compressed sparse row form.

    Row i of (indptr, indices) is the sorted neighbor list of node i.
    """
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def n(self) -> int:
        return int(self.indptr.shape[0] - 1)

    @property
    def edge_count(self) -> int:
        return int(self.indices.shape[0] // 2)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, node: int) -> np.ndarray:
        return self.indices[self.indptr[node]:self.indptr[node + 1]]

    @property
    def neighbor_lists(self) -> List[List[int]]:
        return [self.neighbors(i).tolist() for i in range(self.n)]

    def edge_set(self) -> Set[Tuple[int, int]]:
        """Undirected edges as (i, j) pairs with i < j."""
        rows = np.repeat(np.arange(self.n), self.degrees)
        upper = rows < self.indices
        return set(zip(rows[upper].tolist(), self.indices[upper].tolist()))

    def to_csr(self) -> sparse.csr_matrix:
        data = np.ones(self.indices.shape[0], dtype=np.int64)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    @classmethod
    def from_pairs(cls, n: int, first, second) -> 'AdjacencyList':
        """
        Build the adjacency from undirected pairs.

        Self-pairs and duplicates are dropped; orientation does not matter.
        """
        first = np.asarray(first, dtype=np.int64)
        second = np.asarray(second, dtype=np.int64)
        distinct = first != second
        first, second = first[distinct], second[distinct]
        keys = np.unique(np.concatenate([first * n + second, second * n + first]))
        rows, cols = np.divmod(keys, n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(_frozen(indptr), _frozen(cols.astype(np.int64)))


@traced
def sample_graph(params: GbmParams) -> SampledGraph:
    """
    Draw n independent uniform positions from the seeded generator.

    The first n1 node ids are labeled community one. The same params (seed
    included) always give the same graph.
    """
    rng = np.random.default_rng(params.seed)
    positions = rng.random(params.n)
    labels = np.full(params.n, Community.TWO, dtype=np.int8)
    labels[:params.n1] = Community.ONE
    sorted_index = np.argsort(positions, kind='stable')
    return SampledGraph(_frozen(positions), _frozen(labels), _frozen(sorted_index), params)


@traced
def build_adjacency(graph: SampledGraph) -> AdjacencyList:
    """
    Materialize the edge set with a circular sweep.

    Every node scans the position-sorted index over the arc of half-width r_s
    around itself, wrapping across 0/1. Candidates are then filtered with
    `edge_indicator`, so the result equals the all-pairs construction.
    """
    n = graph.n
    if n < 2:
        return AdjacencyList.from_pairs(n, [], [])

    order = graph.sorted_index
    ordered = graph.positions[order]
    reach = graph.params.r_s + SWEEP_SLACK
    unrolled = np.concatenate([ordered - 1.0, ordered, ordered + 1.0])
    lo = np.searchsorted(unrolled, ordered - reach, side='left')
    hi = np.searchsorted(unrolled, ordered + reach, side='right')

    counts = hi - lo
    starts = np.cumsum(counts) - counts
    source_slot = np.repeat(np.arange(n), counts)
    window_slot = np.repeat(lo - starts, counts) + np.arange(int(counts.sum()))
    first = order[source_slot]
    second = order[window_slot % n]

    # both endpoints see each other, keep one orientation
    upper = first < second
    first, second = first[upper], second[upper]
    connected = edge_indicator(
        graph.positions[first], graph.labels[first],
        graph.positions[second], graph.labels[second],
        graph.params,
    )
    adjacency = AdjacencyList.from_pairs(n, first[connected], second[connected])
    logger.debug(f"Sweep checked {first.shape[0]} candidate pairs, kept {adjacency.edge_count} edges")
    return adjacency


def pairwise_indicator(graph: SampledGraph) -> np.ndarray:
    """Dense n x n boolean adjacency from `edge_indicator` over all pairs, zero diagonal."""
    positions = graph.positions
    labels = graph.labels
    matrix = edge_indicator(positions[:, None], labels[:, None], positions[None, :], labels[None, :], graph.params)
    matrix = np.array(matrix, dtype=bool)
    np.fill_diagonal(matrix, False)
    return matrix


def brute_force_adjacency(graph: SampledGraph) -> AdjacencyList:
    """The O(n^2) all-pairs construction, kept as the oracle for `build_adjacency`."""
    first, second = np.nonzero(np.triu(pairwise_indicator(graph), k=1))
    return AdjacencyList.from_pairs(graph.n, first, second)
