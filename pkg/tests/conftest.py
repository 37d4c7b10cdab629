import pytest

from gbmlab.core.graph import SampledGraph
from gbmlab.core.params import validate_params


def graph_from(positions, labels, r_s, r_d):
    """A SampledGraph with hand-placed nodes; tau is derived from the labels."""
    n = len(positions)
    tau = sum(1 for label in labels if label == 1) / n
    params = validate_params({'n': n, 'tau': tau, 'r_s': r_s, 'r_d': r_d})
    return SampledGraph.from_positions(positions, labels, params)


@pytest.fixture
def make_graph():
    return graph_from
