"""
Expectations Module

This module gives expected degrees, expected ordered triangle and 2-path sums,
and expected per-node triangle sums of a Geometric Block Model graph.

The `expected_*` functions return the leading-order terms the large-n limits
are built from (powers of n with tau n for the community size). The `exact_*`
functions evaluate the same sums at finite n with the actual community sizes
n1 and n2.
"""

import logging
from typing import Tuple

from ..core.errors import ParameterError
from ..core.params import Community, GbmParams
from .regimes import TwoPathPattern, triangle_prob, twopath_prob

# Configure logging
logger = logging.getLogger(__name__)


def _community(value) -> Community:
    try:
        return Community(int(value))
    except ValueError:
        raise ParameterError(f"community must be 1 or 2, got {value!r}", field='community')


def expected_degree(params: GbmParams, community) -> float:
    """
    Expected degree of a node.

    mu_1 = 2n[(1 - tau) r_d + tau r_s] - 2 r_s for community one and
    mu_2 = 2n[(1 - tau) r_s + tau r_d] - 2 r_s for community two.
    """
    community = _community(community)
    n, tau = params.n, params.tau
    if community is Community.ONE:
        return 2.0 * n * ((1.0 - tau) * params.r_d + tau * params.r_s) - 2.0 * params.r_s
    return 2.0 * n * ((1.0 - tau) * params.r_s + tau * params.r_d) - 2.0 * params.r_s


def expected_ordered_sums(params: GbmParams) -> Tuple[float, float]:
    """
    Leading n^3 terms of the expected ordered triangle and 2-path sums.

    Returns:
        (triangle sum, 2-path sum)
    """
    n, tau = params.n, params.tau
    r_s, r_d = params.r_s, params.r_d
    t = tau * (1.0 - tau)
    cube = float(n) ** 3
    same = triangle_prob(r_s, r_d, True)
    mixed = triangle_prob(r_s, r_d, False)
    triangles = ((1.0 - 3.0 * t) * same + 3.0 * t * mixed) * cube
    twopaths = ((1.0 - 3.0 * t) * 4.0 * r_s * r_s + 8.0 * t * r_s * r_d + 4.0 * t * r_d * r_d) * cube
    return triangles, twopaths


def exact_ordered_sums(params: GbmParams) -> Tuple[float, float]:
    """
    Finite-n expected ordered triangle and 2-path sums.

    Counts ordered triples by label pattern with the actual sizes n1, n2.
    """
    n1, n2 = params.n1, params.n2
    r_s, r_d = params.r_s, params.r_d
    all_same = n1 * (n1 - 1) * (n1 - 2) + n2 * (n2 - 1) * (n2 - 2)
    # ordered triples with two nodes in one community and one in the other, per fixed position of the odd node
    split = n1 * (n1 - 1) * n2 + n1 * n2 * (n2 - 1)
    triangles = all_same * triangle_prob(r_s, r_d, True) + 3 * split * triangle_prob(r_s, r_d, False)
    twopaths = (
        all_same * twopath_prob(r_s, r_d, TwoPathPattern.ALL_SAME)
        + 2 * split * twopath_prob(r_s, r_d, TwoPathPattern.CENTER_SHARES_ONE)
        + split * twopath_prob(r_s, r_d, TwoPathPattern.LEAVES_SHARE)
    )
    return float(triangles), float(twopaths)


def expected_node_triangle_sum(params: GbmParams, community) -> float:
    """
    Leading n^2 term of the expected ordered triangle sum at one node.

    Community one: [3 tau^2 r_s^2 + p (1 - tau^2)] n^2, community two:
    [3 (1 - tau)^2 r_s^2 + p tau (2 - tau)] n^2, p the mixed triangle probability.
    """
    community = _community(community)
    n, tau = params.n, params.tau
    same = triangle_prob(params.r_s, params.r_d, True)
    mixed = triangle_prob(params.r_s, params.r_d, False)
    if community is Community.ONE:
        coefficient = tau * tau * same + (1.0 - tau * tau) * mixed
    else:
        rest = 1.0 - tau
        coefficient = rest * rest * same + tau * (2.0 - tau) * mixed
    return coefficient * float(n) ** 2


def exact_node_triangle_sum(params: GbmParams, community) -> float:
    """Finite-n expected ordered triangle sum at a node of the given community."""
    community = _community(community)
    own, other = (params.n1, params.n2) if community is Community.ONE else (params.n2, params.n1)
    if own == 0:
        raise ParameterError(f"community {int(community)} is empty", field='community')
    same = triangle_prob(params.r_s, params.r_d, True)
    mixed = triangle_prob(params.r_s, params.r_d, False)
    return (own - 1) * (own - 2) * same + (2 * (own - 1) * other + other * (other - 1)) * mixed


def _exact_degree(params: GbmParams, community: Community) -> float:
    own, other = (params.n1, params.n2) if community is Community.ONE else (params.n2, params.n1)
    return 2.0 * params.r_s * (own - 1) + 2.0 * params.r_d * other


def average_limit_from_nodes(params: GbmParams) -> float:
    """
    Finite-n construction of the average limit.

    Sum over communities of (share of nodes) * E[node triangles] / (mu (mu - 1)).
    Communities that are empty, or whose expected degree is at most 1, add nothing.
    """
    total = 0.0
    for community, size in ((Community.ONE, params.n1), (Community.TWO, params.n2)):
        if size == 0:
            continue
        mu = _exact_degree(params, community)
        if mu <= 1.0:
            logger.warning(f"Expected degree {mu:.3g} of community {int(community)} too small")
            continue
        total += (size / params.n) * exact_node_triangle_sum(params, community) / (mu * (mu - 1.0))
    return total
