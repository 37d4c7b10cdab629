"""
Limits Module

This module evaluates the large-n limits of the global and average clustering
coefficients, both in radius form (r_s, r_d, tau) and in community-strength
form (lambda = r_s / r_d, tau).

Every function takes an optional `regime` that forces one branch of the
piecewise formula. Without it the branch follows the radii (or lambda < 2).
The subexpression tau (1 - tau) is computed once per call.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from ..core.errors import ParameterError
from ..core.params import check_tau, require_finite
from .regimes import (
    Regime,
    TwoPathPattern,
    classify_regime,
    twopath_prob,
)

# Configure logging
logger = logging.getLogger(__name__)

RGG_LIMIT = 0.75


def _checked_tau(tau: float) -> float:
    tau = require_finite('tau', tau)
    check_tau(tau)
    return tau


def _checked_lambda(lam: float) -> float:
    lam = require_finite('lambda', lam)
    if lam < 1.0:
        raise ParameterError(f"lambda must be >= 1, got {lam}", field='lambda')
    return lam


def _branch(regime: Optional[Regime], natural: Regime) -> Regime:
    return natural if regime is None else regime


def _mixed_triangle(r_s: float, r_d: float, regime: Regime) -> float:
    if regime is Regime.REGIME_I:
        return 4.0 * r_s * r_d - r_s * r_s
    return 4.0 * r_d * r_d


def global_cc_limit(r_s: float, r_d: float, tau: float, regime: Optional[Regime] = None) -> float:
    """
    Limit of the global clustering coefficient.

    Ratio of the leading ordered triangle sum to the leading ordered 2-path sum:
    ([3 - 9t] r_s^2 + 3t p) / ([4 - 12t] r_s^2 + 8t r_s r_d + 4t r_d^2) with
    t = tau (1 - tau) and p the mixed-label triangle probability.
    """
    natural = classify_regime(r_s, r_d)
    tau = _checked_tau(tau)
    t = tau * (1.0 - tau)
    mixed = _mixed_triangle(r_s, r_d, _branch(regime, natural))
    numerator = (3.0 - 9.0 * t) * r_s * r_s + 3.0 * t * mixed
    denominator = (4.0 - 12.0 * t) * r_s * r_s + 8.0 * t * r_s * r_d + 4.0 * t * r_d * r_d
    return numerator / denominator


def avg_cc_limit(r_s: float, r_d: float, tau: float, regime: Optional[Regime] = None) -> float:
    """
    Limit of the average clustering coefficient.

    Community-weighted mean of the per-community ratio of expected node
    triangles to expected squared degree.
    """
    natural = classify_regime(r_s, r_d)
    tau = _checked_tau(tau)
    rest = 1.0 - tau
    mixed = _mixed_triangle(r_s, r_d, _branch(regime, natural))
    first_degree = tau * r_s + rest * r_d
    second_degree = tau * r_d + rest * r_s
    first = tau * (3.0 * tau * tau * r_s * r_s + (1.0 - tau * tau) * mixed) / (4.0 * first_degree * first_degree)
    second = rest * (3.0 * rest * rest * r_s * r_s + tau * (2.0 - tau) * mixed) / (4.0 * second_degree * second_degree)
    return first + second


def balanced_limit(r_s: float, r_d: float) -> float:
    """
    Shared limit of both coefficients at tau = 1/2.

    3 r_s r_d / (r_s + r_d)^2 in REGIME_I, 3 (r_s^2 + 4 r_d^2) / (4 (r_s + r_d)^2) in REGIME_II.
    """
    total = r_s + r_d
    if classify_regime(r_s, r_d) is Regime.REGIME_I:
        return 3.0 * r_s * r_d / (total * total)
    return 3.0 * (r_s * r_s + 4.0 * r_d * r_d) / (4.0 * total * total)


def g_of(lam: float, tau: float, regime: Optional[Regime] = None) -> float:
    """Global limit as a function of community strength; equals global_cc_limit(lam r, r, tau) for any r > 0."""
    lam = _checked_lambda(lam)
    tau = _checked_tau(tau)
    t = tau * (1.0 - tau)
    branch = _branch(regime, Regime.REGIME_I if lam < 2.0 else Regime.REGIME_II)
    if branch is Regime.REGIME_I:
        numerator = (3.0 - 9.0 * t) * lam * lam + 3.0 * t * (4.0 * lam - lam * lam)
    else:
        numerator = (3.0 - 9.0 * t) * lam * lam + 12.0 * t
    denominator = (4.0 - 12.0 * t) * lam * lam + 8.0 * t * lam + 4.0 * t
    return numerator / denominator


def f_of(lam: float, regime: Optional[Regime] = None) -> float:
    """Global limit for balanced communities: 3 lam / (1 + lam)^2 below 2, 3 (4 + lam^2) / (4 (1 + lam)^2) above."""
    lam = _checked_lambda(lam)
    branch = _branch(regime, Regime.REGIME_I if lam < 2.0 else Regime.REGIME_II)
    total = 1.0 + lam
    if branch is Regime.REGIME_I:
        return 3.0 * lam / (total * total)
    return 3.0 * (4.0 + lam * lam) / (4.0 * total * total)


def h_of(lam: float, tau: float, regime: Optional[Regime] = None) -> float:
    """Average limit as a function of community strength."""
    lam = _checked_lambda(lam)
    tau = _checked_tau(tau)
    rest = 1.0 - tau
    branch = _branch(regime, Regime.REGIME_I if lam < 2.0 else Regime.REGIME_II)
    mixed = 4.0 * lam - lam * lam if branch is Regime.REGIME_I else 4.0
    first_degree = tau * lam + rest
    second_degree = rest * lam + tau
    first = tau * (3.0 * tau * tau * lam * lam + mixed * (1.0 - tau * tau)) / (4.0 * first_degree * first_degree)
    second = rest * (3.0 * rest * rest * lam * lam + mixed * tau * (2.0 - tau)) / (4.0 * second_degree * second_degree)
    return first + second


def lambda_star(tau: float) -> float:
    """
    Community strength minimizing g(., tau).

    Raises:
        ParameterError: For tau outside (0, 1), where there is no community structure
    """
    tau = _checked_tau(tau)
    if tau <= 0.0 or tau >= 1.0:
        raise ParameterError(f"lambda* needs tau in (0, 1), got {tau}", field='tau')
    t = tau * (1.0 - tau)
    return 1.5 + 0.5 * math.sqrt((9.0 - 11.0 * t) / (1.0 - 3.0 * t))


@dataclass(frozen=True)
class LimitEval:
    """
    One closed-form evaluation.

    Attributes:
        regime (Regime): Active branch
        global_limit (float): Limit of the global coefficient
        average_limit (float): Limit of the average coefficient
        triangle_prob_same (float): Same-label triangle probability
        triangle_prob_mixed (float): Mixed-label triangle probability
        twopath_probs (Dict[TwoPathPattern, float]): 2-path probability per label pattern
        r_s, r_d, tau (float): Inputs
        lam (Optional[float]): Community strength, when evaluated in lambda form
        lam_star (Optional[float]): Minimizer of g(., tau) when tau is in (0, 1)
    """
    regime: Regime
    global_limit: float
    average_limit: float
    triangle_prob_same: float
    triangle_prob_mixed: float
    twopath_probs: Dict[TwoPathPattern, float] = field(default_factory=dict)
    r_s: float = 0.0
    r_d: float = 0.0
    tau: float = 0.0
    lam: Optional[float] = None
    lam_star: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            'regime': self.regime.value,
            'r_s': self.r_s,
            'r_d': self.r_d,
            'tau': self.tau,
            'lambda': self.lam,
            'lambda_star': self.lam_star,
            'global_limit': self.global_limit,
            'average_limit': self.average_limit,
            'triangle_prob_same': self.triangle_prob_same,
            'triangle_prob_mixed': self.triangle_prob_mixed,
            'twopath_probs': {pattern.value: value for pattern, value in self.twopath_probs.items()},
        }


def _optional_lambda_star(tau: float) -> Optional[float]:
    return lambda_star(tau) if 0.0 < tau < 1.0 else None


def evaluate_limits(r_s: float, r_d: float, tau: float) -> LimitEval:
    """Evaluate regime, both limits and the intermediate probabilities for a radius pair."""
    regime = classify_regime(r_s, r_d)
    return LimitEval(
        regime=regime,
        global_limit=global_cc_limit(r_s, r_d, tau),
        average_limit=avg_cc_limit(r_s, r_d, tau),
        triangle_prob_same=3.0 * r_s * r_s,
        triangle_prob_mixed=_mixed_triangle(r_s, r_d, regime),
        twopath_probs={pattern: twopath_prob(r_s, r_d, pattern) for pattern in TwoPathPattern},
        r_s=r_s,
        r_d=r_d,
        tau=tau,
        lam=r_s / r_d,
        lam_star=_optional_lambda_star(tau),
    )


def evaluate_lambda_limits(lam: float, tau: float, r_d: float = 1.0) -> LimitEval:
    """
    Evaluate in community-strength form.

    The limits come from g and h. The probabilities use r_s = lam * r_d; with
    the default r_d = 1 they are in units of r_d^2.
    """
    lam = _checked_lambda(lam)
    r_d = require_finite('r_d', r_d)
    if r_d <= 0:
        raise ParameterError(f"r_d must be > 0, got {r_d}", field='r_d')
    r_s = lam * r_d
    regime = Regime.REGIME_I if lam < 2.0 else Regime.REGIME_II
    return LimitEval(
        regime=regime,
        global_limit=g_of(lam, tau),
        average_limit=h_of(lam, tau),
        triangle_prob_same=3.0 * r_s * r_s,
        triangle_prob_mixed=_mixed_triangle(r_s, r_d, regime),
        twopath_probs={pattern: twopath_prob(r_s, r_d, pattern) for pattern in TwoPathPattern},
        r_s=r_s,
        r_d=r_d,
        tau=tau,
        lam=lam,
        lam_star=_optional_lambda_star(tau),
    )
