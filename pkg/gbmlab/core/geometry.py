"""
Circle geometry.

Both functions accept scalars or numpy arrays; scalar input gives a scalar back.
"""

from typing import Union

import numpy as np

from .params import GbmParams, Radii

ArrayLike = Union[float, np.ndarray]


def periodic_distance(x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """
    Distance on the unit circle, min(|x - y|, 1 - |x - y|).

    Args:
        x: Coordinate(s) in [0, 1)
        y: Coordinate(s) in [0, 1)

    Returns:
        Distance(s) in [0, 0.5]
    """
    delta = np.abs(np.subtract(x, y, dtype=np.float64))
    distance = np.minimum(delta, 1.0 - delta)
    if np.ndim(distance) == 0:
        return float(distance)
    return distance


def edge_indicator(x_i: ArrayLike, z_i, x_j: ArrayLike, z_j, params: Union[GbmParams, Radii]):
    """
    Adjacency rule of the model: connected when the periodic distance is at most
    r_s for a same-community pair and at most r_d otherwise. Inclusive.

    Args:
        x_i, x_j: Coordinates
        z_i, z_j: Community labels
        params: Anything exposing r_s and r_d

    Returns:
        bool, or a boolean array for array input
    """
    radius = np.where(np.equal(z_i, z_j), params.r_s, params.r_d)
    connected = periodic_distance(x_i, x_j) <= radius
    if np.ndim(connected) == 0:
        return bool(connected)
    return connected
