"""
Tests for parameter validation and circle geometry.
"""

import math

import numpy as np
import pytest

from gbmlab.core.errors import ParameterError, RadiusOrderError
from gbmlab.core.geometry import edge_indicator, periodic_distance
from gbmlab.core.params import Community, GbmParams, Radii, RadiusRule, radius_for_rule, validate_params


def test_validate_balanced_params():
    params = validate_params({'n': 100, 'tau': 0.5, 'r_s': 0.1, 'r_d': 0.05})
    assert isinstance(params, GbmParams)
    assert params.n1 == 50
    assert params.n2 == 50
    assert params.seed == 0


def test_community_size_rounds_half_up():
    params = validate_params({'n': 10, 'tau': 0.25, 'r_s': 0.1, 'r_d': 0.05})
    assert params.n1 == 3
    assert params.n2 == 7


def test_radius_order_violation():
    with pytest.raises(RadiusOrderError, match="radius-order violation") as info:
        validate_params({'n': 100, 'tau': 0.5, 'r_s': 0.05, 'r_d': 0.1})
    assert info.value.field == 'r_s'


@pytest.mark.parametrize("raw, field", [
    ({'n': 0, 'tau': 0.5, 'r_s': 0.1, 'r_d': 0.05}, 'n'),
    ({'n': 10, 'tau': 1.5, 'r_s': 0.1, 'r_d': 0.05}, 'tau'),
    ({'n': 10, 'tau': -0.1, 'r_s': 0.1, 'r_d': 0.05}, 'tau'),
    ({'n': 10, 'tau': 0.5, 'r_s': 0.6, 'r_d': 0.05}, 'r_s'),
    ({'n': 10, 'tau': 0.5, 'r_s': 0.1, 'r_d': -0.01}, 'r_d'),
    ({'n': 10, 'tau': float('nan'), 'r_s': 0.1, 'r_d': 0.05}, 'tau'),
    ({'n': 10, 'tau': 0.5, 'r_s': float('inf'), 'r_d': 0.05}, 'r_s'),
    ({'n': 10.5, 'tau': 0.5, 'r_s': 0.1, 'r_d': 0.05}, 'n'),
    ({'n': 10, 'tau': 0.5, 'r_s': 0.1, 'r_d': 0.05, 'seed': -1}, 'seed'),
    ({'n': 10, 'tau': 0.5, 'r_s': 0.1}, 'r_d'),
])
def test_invalid_params_name_the_field(raw, field):
    with pytest.raises(ParameterError) as info:
        validate_params(raw)
    assert info.value.field == field


def test_string_values_are_accepted():
    params = validate_params({'n': '20', 'tau': '0.3', 'r_s': '0.2', 'r_d': '0.1', 'seed': '7'})
    assert params == GbmParams(n=20, tau=0.3, r_s=0.2, r_d=0.1, seed=7)
    assert params.n1 == 6


def test_with_seed_keeps_the_rest():
    params = validate_params({'n': 20, 'tau': 0.3, 'r_s': 0.2, 'r_d': 0.1})
    reseeded = params.with_seed(2 ** 64 - 1)
    assert reseeded.seed == 2 ** 64 - 1
    assert reseeded.radii == Radii(0.2, 0.1)
    assert reseeded.strength == pytest.approx(2.0)


@pytest.mark.parametrize("x, y, expected", [
    (0.1, 0.9, 0.2),
    (0.3, 0.3, 0.0),
    (0.0, 0.5, 0.5),
    (0.95, 0.05, 0.1),
])
def test_periodic_distance_examples(x, y, expected):
    assert periodic_distance(x, y) == pytest.approx(expected, abs=1e-15)


def test_periodic_distance_is_symmetric_and_bounded():
    rng = np.random.default_rng(3)
    x = rng.random(1000)
    y = rng.random(1000)
    forward = periodic_distance(x, y)
    assert np.array_equal(forward, periodic_distance(y, x))
    assert np.all((forward >= 0.0) & (forward <= 0.5))


def test_periodic_distance_triangle_inequality():
    rng = np.random.default_rng(4)
    x, y, z = rng.random((3, 1000))
    assert np.all(periodic_distance(x, z) <= periodic_distance(x, y) + periodic_distance(y, z) + 1e-15)


def test_edge_indicator_examples():
    radii = Radii(r_s=0.2, r_d=0.1)
    assert edge_indicator(0.10, Community.ONE, 0.25, Community.ONE, radii) is True
    assert edge_indicator(0.10, Community.ONE, 0.25, Community.TWO, radii) is False
    assert edge_indicator(0.0, Community.TWO, 0.2, Community.TWO, radii) is True


def test_edge_indicator_wraps_around():
    radii = Radii(r_s=0.1, r_d=0.05)
    assert edge_indicator(0.98, 1, 0.02, 2, radii) is True
    assert edge_indicator(0.9, 1, 0.02, 1, radii) is False


def test_edge_indicator_vectorized():
    radii = Radii(r_s=0.2, r_d=0.1)
    result = edge_indicator(np.array([0.1, 0.1]), np.array([1, 1]), np.array([0.25, 0.25]), np.array([1, 2]), radii)
    assert result.tolist() == [True, False]


def test_radius_rules():
    assert radius_for_rule(RadiusRule.FIXED, 1000, 0.02) == 0.02
    assert radius_for_rule(RadiusRule.POWER, 100, 1.0, alpha=0.5) == pytest.approx(0.1)
    assert radius_for_rule(RadiusRule.LOG, 1000, 2.0) == pytest.approx(2.0 * math.log(1000) / 1000)
    with pytest.raises(ParameterError):
        radius_for_rule('linear', 1000, 0.02)
