"""
Parameters Module

This module provides the model parameters of the two-community Geometric Block
Model and their validation.
"""

import math
import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Any, Mapping, NamedTuple

from .errors import ParameterError, RadiusOrderError

# Configure logging
logger = logging.getLogger(__name__)

MAX_RADIUS = 0.5
MAX_SEED = 2 ** 64 - 1


class Community(IntEnum):
    """Community indicator carried by every node."""
    ONE = 1
    TWO = 2


class Radii(NamedTuple):
    """Connection radii on their own, for code that does not need a node count."""
    r_s: float
    r_d: float


@dataclass(frozen=True)
class GbmParams:
    """
    The model tuple of one experiment cell.

    Build instances through `validate_params`; the constructor does not check anything.

    Attributes:
        n (int): Node count
        tau (float): Fraction of nodes in community one
        r_s (float): Within-community radius
        r_d (float): Between-community radius
        seed (int): Unsigned 64-bit RNG seed
    """
    n: int
    tau: float
    r_s: float
    r_d: float
    seed: int = 0

    @property
    def n1(self) -> int:
        """Size of community one, the nearest integer to tau*n with ties rounded up."""
        return nearest_community_size(self.tau, self.n)

    @property
    def n2(self) -> int:
        return self.n - self.n1

    @property
    def radii(self) -> Radii:
        return Radii(self.r_s, self.r_d)

    @property
    def strength(self) -> float:
        """Community strength r_s / r_d (infinite when r_d is zero)."""
        return self.r_s / self.r_d if self.r_d > 0 else math.inf

    def with_seed(self, seed: int) -> 'GbmParams':
        return validate_params({**self.to_dict(), 'seed': seed})

    def to_dict(self) -> dict:
        return {'n': self.n, 'tau': self.tau, 'r_s': self.r_s, 'r_d': self.r_d, 'seed': self.seed}


def nearest_community_size(tau: float, n: int) -> int:
    return int(math.floor(tau * n + 0.5))


def require_finite(name: str, value: Any) -> float:
    """
    Coerce a value to float and reject NaN, infinities and non-numbers.

    Args:
        name (str): Field name used in the error message
        value: Raw value (number or numeric string)

    Returns:
        float: The validated value
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a number, got {value!r}", field=name)
    if not math.isfinite(number):
        raise ParameterError(f"{name} must be finite, got {value!r}", field=name)
    return number


def require_int(name: str, value: Any) -> int:
    """Coerce a value to int, rejecting fractional and non-finite input."""
    if isinstance(value, bool):
        raise ParameterError(f"{name} must be an integer, got {value!r}", field=name)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    number = require_finite(name, value)
    if not number.is_integer():
        raise ParameterError(f"{name} must be an integer, got {value!r}", field=name)
    return int(number)


def check_radii(r_s: float, r_d: float) -> None:
    """Enforce 0 <= r_d <= r_s <= 0.5."""
    for name, value in (('r_s', r_s), ('r_d', r_d)):
        if not 0.0 <= value <= MAX_RADIUS:
            raise ParameterError(f"{name} must lie in [0, {MAX_RADIUS}], got {value}", field=name)
    if r_s < r_d:
        raise RadiusOrderError(r_s, r_d)


def check_tau(tau: float) -> None:
    if not 0.0 <= tau <= 1.0:
        raise ParameterError(f"tau must lie in [0, 1], got {tau}", field='tau')


def validate_params(raw: Mapping[str, Any]) -> GbmParams:
    """
    Validate a candidate parameter tuple.

    Args:
        raw: Mapping with keys n, tau, r_s, r_d and optionally seed

    Returns:
        GbmParams: Validated parameters

    Raises:
        ParameterError: Naming the offending field
        RadiusOrderError: When r_s < r_d
    """
    missing = [key for key in ('n', 'tau', 'r_s', 'r_d') if key not in raw]
    if missing:
        raise ParameterError(f"missing parameter: {missing[0]}", field=missing[0])

    n = require_int('n', raw['n'])
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}", field='n')
    tau = require_finite('tau', raw['tau'])
    check_tau(tau)
    r_s = require_finite('r_s', raw['r_s'])
    r_d = require_finite('r_d', raw['r_d'])
    check_radii(r_s, r_d)

    seed = require_int('seed', raw.get('seed', 0))
    if not 0 <= seed <= MAX_SEED:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed}", field='seed')

    params = GbmParams(n=n, tau=tau, r_s=r_s, r_d=r_d, seed=seed)
    logger.debug(f"Validated {params} (n1={params.n1}, n2={params.n2})")
    return params


class RadiusRule:
    """Names of the r_d scaling rules used across node counts."""
    FIXED = 'fixed'
    POWER = 'power'
    LOG = 'log'

    ALL = (FIXED, POWER, LOG)


def radius_for_rule(rule: str, n: int, c: float, alpha: float = 1.0) -> float:
    """
    Between-community radius for node count n.

    Args:
        rule (str): 'fixed' gives c, 'power' gives c / n**alpha, 'log' gives c * log(n) / n
        n (int): Node count
        c (float): Scale constant
        alpha (float): Exponent of the power rule

    Returns:
        float: r_d
    """
    if rule == RadiusRule.FIXED:
        return c
    if rule == RadiusRule.POWER:
        return c / n ** alpha
    if rule == RadiusRule.LOG:
        return c * math.log(n) / n
    raise ParameterError(f"unknown radius rule {rule!r}; expected one of {RadiusRule.ALL}", field='radius_rule')
