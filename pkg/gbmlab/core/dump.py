"""
Graph dump format.

One header comment with the parameters, then one line per node
"id position label", then one line per undirected edge "i j" with i < j.
"""

import logging
from typing import Dict, Tuple

from .errors import GbmError, GraphFormatError
from .graph import AdjacencyList, SampledGraph
from .params import validate_params
from .renderer import render_to_file

# Configure logging
logger = logging.getLogger(__name__)


def _edges_in_order(adjacency: AdjacencyList):
    for node in range(adjacency.n):
        for other in adjacency.neighbors(node).tolist():
            if node < other:
                yield node, other


def write_graph_dump(graph: SampledGraph, adjacency: AdjacencyList, path: str) -> None:
    """Write the node/edge dump of a graph."""
    nodes = zip(range(graph.n), graph.positions.tolist(), graph.labels.tolist())
    render_to_file('graph_dump.txt.j2', path, params=graph.params, nodes=nodes, edges=_edges_in_order(adjacency))
    logger.info(f"Wrote {graph.n} nodes and {adjacency.edge_count} edges to {path}")


def _parse_header(line: str) -> Dict[str, str]:
    fields = {}
    for token in line.lstrip('#').split():
        key, sep, value = token.partition('=')
        if not sep:
            raise GraphFormatError(f"bad header token {token!r}")
        fields[key] = value
    return fields


def read_graph_dump(path: str) -> Tuple[SampledGraph, AdjacencyList]:
    """
    Load a dump written by `write_graph_dump`.

    Raises:
        GraphFormatError: On malformed content
    """
    header = None
    positions, labels, first, second = [], [], [], []
    with open(path, encoding='utf-8') as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith('#'):
                if header is None:
                    header = _parse_header(line)
                continue
            tokens = line.split()
            try:
                if len(tokens) == 3:
                    if first:
                        raise GraphFormatError(f"line {number}: node line after edge lines")
                    if int(tokens[0]) != len(positions):
                        raise GraphFormatError(f"line {number}: node ids must be consecutive from 0")
                    positions.append(float(tokens[1]))
                    labels.append(int(tokens[2]))
                elif len(tokens) == 2:
                    first.append(int(tokens[0]))
                    second.append(int(tokens[1]))
                else:
                    raise GraphFormatError(f"line {number}: expected 2 or 3 fields, got {len(tokens)}")
            except ValueError:
                raise GraphFormatError(f"line {number}: unparsable {line!r}")

    if header is None:
        raise GraphFormatError("missing parameter header")
    try:
        params = validate_params(header)
        graph = SampledGraph.from_positions(positions, labels, params)
    except GbmError as e:
        raise GraphFormatError(f"inconsistent dump: {str(e)}")
    n = graph.n
    if any(not (0 <= node < n) for node in first + second):
        raise GraphFormatError("edge endpoint out of range")
    return graph, AdjacencyList.from_pairs(n, first, second)
