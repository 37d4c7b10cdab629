"""
Tests for the midpoint-rule oracle of the conditional probabilities.
"""

import pytest

from gbmlab.core.errors import QuadratureConfigError
from gbmlab.oracle.quadrature import (
    MIN_GRID,
    QuadratureConfig,
    anchor_invariance_check,
    run_oracle_suite,
    triangle_prob_quadrature,
    twopath_prob_quadrature,
)
from gbmlab.theory.regimes import triangle_prob_for_labels

FINE = QuadratureConfig(grid_m=8192)

REGIME_ONE_PAIRS = [(0.1, 0.08), (0.12, 0.1), (0.05, 0.04)]
REGIME_TWO_PAIRS = [(0.2, 0.08), (0.15, 0.05), (0.1, 0.02)]


@pytest.mark.parametrize("r_s, r_d, labels, expected", [
    (0.1, 0.1, (1, 1, 1), 0.03),
    (0.1, 0.08, (1, 1, 2), 0.022),
    (0.2, 0.08, (1, 2, 2), 0.0256),
])
def test_triangle_quadrature_examples(r_s, r_d, labels, expected):
    assert triangle_prob_quadrature(r_s, r_d, labels, FINE) == pytest.approx(expected, abs=5e-4)


@pytest.mark.parametrize("labels, expected", [
    ((1, 1, 1), 0.04),
    ((1, 1, 2), 0.02),
    ((1, 2, 2), 0.01),
])
def test_twopath_quadrature_examples(labels, expected):
    assert twopath_prob_quadrature(0.1, 0.05, labels, FINE) == pytest.approx(expected, abs=5e-4)


def test_twopath_quadrature_is_product_of_edge_probabilities():
    # 2-1-3 with Z1 = Z3 != Z2: edge 1-2 uses r_d and edge 1-3 uses r_s
    estimate = twopath_prob_quadrature(0.15, 0.05, (2, 1, 2), FINE)
    assert estimate == pytest.approx((2 * 0.05) * (2 * 0.15), abs=5e-4)


@pytest.mark.parametrize("anchors, r_s, r_d, labels", [
    ((0.1, 0.5, 0.9), 0.1, 0.08, (1, 1, 2)),
    ((0.0, 0.5), 0.07, 0.07, (1, 1, 1)),
])
def test_anchor_invariance(anchors, r_s, r_d, labels):
    assert anchor_invariance_check(r_s, r_d, labels, anchors, FINE) <= 1e-3


def test_repeated_anchor_has_no_spread():
    config = QuadratureConfig(grid_m=512)
    assert anchor_invariance_check(0.1, 0.08, (1, 2, 2), (0.3, 0.3, 0.3), config) == 0.0


def test_anchor_check_needs_two_anchors():
    with pytest.raises(QuadratureConfigError):
        anchor_invariance_check(0.1, 0.08, (1, 1, 2), (0.5,))


@pytest.mark.parametrize("r_s, r_d", REGIME_ONE_PAIRS + REGIME_TWO_PAIRS)
@pytest.mark.parametrize("labels", [(1, 1, 1), (1, 1, 2), (1, 2, 2)])
def test_quadrature_error_shrinks_with_grid(r_s, r_d, labels):
    expected = triangle_prob_for_labels(r_s, r_d, labels)
    for grid_m in (256, 512, 1024, 2048):
        estimate = triangle_prob_quadrature(r_s, r_d, labels, QuadratureConfig(grid_m=grid_m))
        assert abs(estimate - expected) <= 4.0 / grid_m


@pytest.mark.parametrize("r_s, r_d", [(0.1, 0.08), (0.2, 0.08)])
@pytest.mark.parametrize("labels", [(1, 1, 2), (1, 2, 2), (2, 1, 1)])
def test_conditioning_node_symmetry(r_s, r_d, labels):
    config = QuadratureConfig(grid_m=4096)
    first = triangle_prob_quadrature(r_s, r_d, labels, config, conditioned_node=1)
    third = triangle_prob_quadrature(r_s, r_d, labels, config, conditioned_node=3)
    assert abs(first - third) <= 1e-3


def test_chunking_does_not_change_the_count():
    small = QuadratureConfig(grid_m=1024, chunk_rows=7)
    large = QuadratureConfig(grid_m=1024, chunk_rows=4096)
    for labels in ((1, 1, 1), (1, 1, 2), (1, 2, 2)):
        assert triangle_prob_quadrature(0.2, 0.08, labels, small) == triangle_prob_quadrature(0.2, 0.08, labels, large)


@pytest.mark.parametrize("kwargs", [
    {'grid_m': MIN_GRID - 1},
    {'grid_m': 100.5},
    {'grid_m': True},
    {'anchor': 1.0},
    {'anchor': -0.1},
    {'anchor': float('nan')},
    {'chunk_rows': 0},
])
def test_invalid_config(kwargs):
    with pytest.raises(QuadratureConfigError):
        QuadratureConfig(**kwargs)


@pytest.mark.parametrize("labels", [(1, 1), (1, 2, 3), (0, 1, 1)])
def test_invalid_labels(labels):
    with pytest.raises(QuadratureConfigError):
        triangle_prob_quadrature(0.1, 0.05, labels, QuadratureConfig(grid_m=64))


def test_invalid_conditioned_node():
    with pytest.raises(QuadratureConfigError):
        twopath_prob_quadrature(0.1, 0.05, (1, 1, 1), QuadratureConfig(grid_m=64), conditioned_node=4)


def test_oracle_suite_passes():
    report = run_oracle_suite(grid_m=4096)
    assert report.passed
    assert report.max_deviation <= 5e-3
    assert report.max_anchor_deviation <= 1e-3
    kinds = {case.kind for case in report.cases}
    assert kinds == {'triangle', 'twopath', 'anchor'}
    assert report.to_dict()['passed'] is True


@pytest.mark.slow
def test_oracle_suite_passes_on_fine_grid():
    report = run_oracle_suite(grid_m=8192)
    assert report.passed
    assert report.max_deviation <= 1e-3
    assert report.max_anchor_deviation <= 1e-3


def test_oracle_suite_reports_breaches():
    report = run_oracle_suite(grid_m=64, tolerance=1e-9, anchor_tolerance=1.0)
    assert not report.passed
    assert all(case.kind != 'anchor' for case in report.failures)
