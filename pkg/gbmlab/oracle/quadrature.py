"""
Quadrature Module

This module checks the conditional triangle and 2-path probabilities by a
deterministic midpoint rule over the two free positions, with one node fixed
at an anchor. It evaluates the edge indicators only and never reuses the
closed forms.

Estimates are integer counts of grid cells divided by grid_m^2, so chunking
and visiting order cannot change them.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ParameterError, QuadratureConfigError
from ..core.geometry import edge_indicator
from ..core.params import Community, Radii, check_radii, require_finite
from ..core.tracing import traced
from ..theory.regimes import TwoPathPattern, triangle_prob_for_labels, twopath_prob

# Configure logging
logger = logging.getLogger(__name__)

MIN_GRID = 64
DEFAULT_TOLERANCE = 5e-3
DEFAULT_ANCHOR_TOLERANCE = 1e-3

TRIANGLE_EDGES = ((0, 1), (0, 2), (1, 2))
TWOPATH_EDGES = ((0, 1), (0, 2))

SUITE_RADII = ((0.1, 0.1), (0.1, 0.08), (0.2, 0.08), (0.15, 0.05))
SUITE_LABELS = ((1, 1, 1), (1, 1, 2), (1, 2, 2))
SUITE_ANCHORS = (0.1, 0.5, 0.9)

Labels = Tuple[int, int, int]


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Midpoint grid settings.

    Attributes:
        grid_m (int): Points per axis, at least 64
        anchor (float): Position of the conditioning node, in [0, 1)
        chunk_rows (int): Grid rows evaluated per block
    """
    grid_m: int = 8192
    anchor: float = 0.5
    chunk_rows: int = 512

    def __post_init__(self):
        if isinstance(self.grid_m, bool) or not isinstance(self.grid_m, (int, np.integer)) or self.grid_m < MIN_GRID:
            raise QuadratureConfigError(f"grid_m must be an integer >= {MIN_GRID}, got {self.grid_m!r}", field='grid_m')
        try:
            anchor = require_finite('anchor', self.anchor)
        except ParameterError as e:
            raise QuadratureConfigError(str(e), field='anchor')
        if not 0.0 <= anchor < 1.0:
            raise QuadratureConfigError(f"anchor must lie in [0, 1), got {anchor}", field='anchor')
        if self.chunk_rows < 1:
            raise QuadratureConfigError(f"chunk_rows must be >= 1, got {self.chunk_rows}", field='chunk_rows')

    def with_anchor(self, anchor: float) -> 'QuadratureConfig':
        return QuadratureConfig(grid_m=self.grid_m, anchor=anchor, chunk_rows=self.chunk_rows)


def _checked_labels(labels: Sequence[int]) -> Labels:
    if len(labels) != 3:
        raise QuadratureConfigError(f"expected three labels, got {len(labels)}", field='labels')
    for label in labels:
        if label not in (Community.ONE, Community.TWO):
            raise QuadratureConfigError(f"labels must be 1 or 2, got {label!r}", field='labels')
    return tuple(int(label) for label in labels)


def _midpoint_estimate(radii: Radii, labels: Labels, edges, fixed: int, config: QuadratureConfig) -> float:
    m = config.grid_m
    grid = (np.arange(m, dtype=np.float64) + 0.5) / m
    row_node, col_node = [node for node in range(3) if node != fixed]

    row_mask = np.ones(m, dtype=bool)
    col_mask = np.ones(m, dtype=bool)
    coupled = False
    for a, b in edges:
        if fixed not in (a, b):
            coupled = True
            continue
        other = b if a == fixed else a
        present = edge_indicator(config.anchor, labels[fixed], grid, labels[other], radii)
        if other == row_node:
            row_mask &= present
        else:
            col_mask &= present

    rows = grid[row_mask]
    cols = grid[col_mask]
    if not coupled:
        count = rows.size * cols.size
    else:
        count = 0
        for start in range(0, rows.size, config.chunk_rows):
            block = rows[start:start + config.chunk_rows]
            count += int(np.count_nonzero(
                edge_indicator(block[:, None], labels[row_node], cols[None, :], labels[col_node], radii)
            ))
    return count / float(m * m)


def _prepare(r_s: float, r_d: float, labels, config: Optional[QuadratureConfig], conditioned_node: int):
    r_s = require_finite('r_s', r_s)
    r_d = require_finite('r_d', r_d)
    check_radii(r_s, r_d)
    if conditioned_node not in (1, 2, 3):
        raise QuadratureConfigError(f"conditioned_node must be 1, 2 or 3, got {conditioned_node!r}", field='conditioned_node')
    return Radii(r_s, r_d), _checked_labels(labels), config or QuadratureConfig()


@traced
def triangle_prob_quadrature(r_s: float, r_d: float, labels: Sequence[int],
                             config: Optional[QuadratureConfig] = None, conditioned_node: int = 1) -> float:
    """
    Midpoint estimate of E[A12 A13 A23 | X_c] with X_c at the anchor.

    Args:
        r_s, r_d (float): Radii
        labels: (z1, z2, z3)
        config (QuadratureConfig): Grid and anchor
        conditioned_node (int): Which node c is fixed

    Returns:
        float: Probability estimate
    """
    radii, labels, config = _prepare(r_s, r_d, labels, config, conditioned_node)
    return _midpoint_estimate(radii, labels, TRIANGLE_EDGES, conditioned_node - 1, config)


@traced
def twopath_prob_quadrature(r_s: float, r_d: float, labels: Sequence[int],
                            config: Optional[QuadratureConfig] = None, conditioned_node: int = 1) -> float:
    """Midpoint estimate of E[A12 A13 | X_c], the 2-path centered at node 1."""
    radii, labels, config = _prepare(r_s, r_d, labels, config, conditioned_node)
    return _midpoint_estimate(radii, labels, TWOPATH_EDGES, conditioned_node - 1, config)


def anchor_invariance_check(r_s: float, r_d: float, labels: Sequence[int], anchors: Sequence[float],
                            config: Optional[QuadratureConfig] = None) -> float:
    """
    Largest pairwise spread of the triangle estimate across anchors.

    Raises:
        QuadratureConfigError: With fewer than two anchors
    """
    if len(anchors) < 2:
        raise QuadratureConfigError("anchor_invariance_check needs at least two anchors", field='anchors')
    base = config or QuadratureConfig()
    estimates = [triangle_prob_quadrature(r_s, r_d, labels, base.with_anchor(anchor)) for anchor in anchors]
    return max(estimates) - min(estimates)


@dataclass(frozen=True)
class OracleCase:
    """One quadrature-versus-closed-form comparison."""
    kind: str
    r_s: float
    r_d: float
    labels: Labels
    estimate: float
    expected: float
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class OracleReport:
    """Outcome of the full quadrature suite."""
    grid_m: int
    tolerance: float
    anchor_tolerance: float
    cases: List[OracleCase] = field(default_factory=list)

    @property
    def failures(self) -> List[OracleCase]:
        return [case for case in self.cases if not case.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_deviation(self) -> float:
        probability_cases = [case.deviation for case in self.cases if case.kind != 'anchor']
        return max(probability_cases) if probability_cases else 0.0

    @property
    def max_anchor_deviation(self) -> float:
        anchor_cases = [case.deviation for case in self.cases if case.kind == 'anchor']
        return max(anchor_cases) if anchor_cases else 0.0

    def to_dict(self) -> dict:
        return {
            'grid_m': self.grid_m,
            'tolerance': self.tolerance,
            'anchor_tolerance': self.anchor_tolerance,
            'passed': self.passed,
            'max_deviation': self.max_deviation,
            'max_anchor_deviation': self.max_anchor_deviation,
            'cases': [
                {
                    'kind': case.kind,
                    'r_s': case.r_s,
                    'r_d': case.r_d,
                    'labels': list(case.labels),
                    'estimate': case.estimate,
                    'expected': case.expected,
                    'deviation': case.deviation,
                    'passed': case.passed,
                }
                for case in self.cases
            ],
        }


def run_oracle_suite(grid_m: int = 8192, tolerance: float = DEFAULT_TOLERANCE,
                     anchor_tolerance: float = DEFAULT_ANCHOR_TOLERANCE) -> OracleReport:
    """
    Compare quadrature with the closed forms on every label pattern and
    representative radius pairs of both regimes, then check anchor invariance.
    """
    config = QuadratureConfig(grid_m=grid_m)
    report = OracleReport(grid_m=grid_m, tolerance=tolerance, anchor_tolerance=anchor_tolerance)
    for r_s, r_d in SUITE_RADII:
        for labels in SUITE_LABELS:
            estimate = triangle_prob_quadrature(r_s, r_d, labels, config)
            expected = triangle_prob_for_labels(r_s, r_d, labels)
            report.cases.append(OracleCase('triangle', r_s, r_d, labels, estimate, expected,
                                           abs(estimate - expected), tolerance))

            estimate = twopath_prob_quadrature(r_s, r_d, labels, config)
            expected = twopath_prob(r_s, r_d, TwoPathPattern.from_labels(labels))
            report.cases.append(OracleCase('twopath', r_s, r_d, labels, estimate, expected,
                                           abs(estimate - expected), tolerance))

        spread = anchor_invariance_check(r_s, r_d, (1, 1, 2), SUITE_ANCHORS, config)
        report.cases.append(OracleCase('anchor', r_s, r_d, (1, 1, 2), spread, 0.0, spread, anchor_tolerance))

    logger.info(f"Oracle suite at grid_m={grid_m}: max deviation {report.max_deviation:.3g}, "
                f"anchor spread {report.max_anchor_deviation:.3g}, {len(report.failures)} failure(s)")
    return report
