"""
Regimes Module

This module classifies radius pairs into the two triangle regimes and gives the
conditional triangle and 2-path probabilities of three labeled nodes.

All probabilities are conditional on one node's position and do not depend on it.
"""

import logging
from enum import Enum
from typing import Sequence

from ..core.errors import ParameterError, RadiusOrderError
from ..core.params import require_finite

# Configure logging
logger = logging.getLogger(__name__)


class Regime(Enum):
    """Triangle regime of a radius pair; r_s == 2 r_d belongs to REGIME_II."""
    REGIME_I = "regime-I"
    REGIME_II = "regime-II"


class TwoPathPattern(Enum):
    """
    Label pattern of a 2-path whose center is node 1.

    ALL_SAME: Z1 = Z2 = Z3
    CENTER_SHARES_ONE: Z1 = Z2 != Z3 or Z1 = Z3 != Z2
    LEAVES_SHARE: Z1 != Z2 = Z3
    """
    ALL_SAME = "all-same"
    CENTER_SHARES_ONE = "center-shares-one"
    LEAVES_SHARE = "leaves-share"

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> 'TwoPathPattern':
        center, first, second = labels
        if center == first == second:
            return cls.ALL_SAME
        if first == second:
            return cls.LEAVES_SHARE
        return cls.CENTER_SHARES_ONE


def check_probability_radii(r_s: float, r_d: float) -> None:
    """Radii accepted by the probability formulas: finite, 0 <= r_d <= r_s."""
    r_s = require_finite('r_s', r_s)
    r_d = require_finite('r_d', r_d)
    if r_d < 0:
        raise ParameterError(f"r_d must be >= 0, got {r_d}", field='r_d')
    if r_s < r_d:
        raise RadiusOrderError(r_s, r_d)


def _regime_of(r_s: float, r_d: float) -> Regime:
    return Regime.REGIME_I if r_s < 2.0 * r_d else Regime.REGIME_II


def classify_regime(r_s: float, r_d: float) -> Regime:
    """
    Classify a radius pair.

    Args:
        r_s (float): Within-community radius
        r_d (float): Between-community radius, > 0

    Returns:
        Regime: REGIME_I iff r_s < 2 r_d

    Raises:
        ParameterError: On nonpositive or misordered radii
    """
    r_d = require_finite('r_d', r_d)
    if r_d <= 0:
        raise ParameterError(f"r_d must be > 0, got {r_d}", field='r_d')
    check_probability_radii(r_s, r_d)
    return _regime_of(r_s, r_d)


def triangle_prob(r_s: float, r_d: float, same_community: bool) -> float:
    """
    Probability that three nodes close a triangle.

    Same community gives 3 r_s^2. Mixed labels give 4 r_s r_d - r_s^2 in
    REGIME_I and 4 r_d^2 in REGIME_II.
    """
    check_probability_radii(r_s, r_d)
    if same_community:
        return 3.0 * r_s * r_s
    if _regime_of(r_s, r_d) is Regime.REGIME_I:
        return 4.0 * r_s * r_d - r_s * r_s
    return 4.0 * r_d * r_d


def triangle_prob_for_labels(r_s: float, r_d: float, labels: Sequence[int]) -> float:
    first, second, third = labels
    return triangle_prob(r_s, r_d, first == second == third)


def twopath_prob(r_s: float, r_d: float, pattern: TwoPathPattern) -> float:
    """Probability of the 2-path 2-1-3: the product of its two edge probabilities."""
    check_probability_radii(r_s, r_d)
    if pattern is TwoPathPattern.ALL_SAME:
        return 4.0 * r_s * r_s
    if pattern is TwoPathPattern.CENTER_SHARES_ONE:
        return 4.0 * r_s * r_d
    if pattern is TwoPathPattern.LEAVES_SHARE:
        return 4.0 * r_d * r_d
    raise ParameterError(f"unknown 2-path pattern {pattern!r}", field='pattern')
