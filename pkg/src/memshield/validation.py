"""Input validation helpers shared by estimators and simulators."""

from __future__ import annotations

import numbers

import numpy as np

from .graph import Graph, NodeMask


def check_graph(graph) -> Graph:
    if not isinstance(graph, Graph):
        raise TypeError(f"expected a Graph, got {type(graph).__name__}")
    return graph


def check_mask(graph: Graph, mask: NodeMask | None) -> NodeMask:
    """Return a mask sized to the graph; None means nothing removed."""
    if mask is None:
        return NodeMask.none(graph.node_count)
    if not isinstance(mask, NodeMask):
        raise TypeError(f"expected a NodeMask, got {type(mask).__name__}")
    if len(mask) != graph.node_count:
        raise ValueError(
            f"mask length {len(mask)} does not match node count {graph.node_count}"
        )
    return mask


def check_cover(graph: Graph, cover) -> "CommunityCover":
    from .cover import CommunityCover

    if not isinstance(cover, CommunityCover):
        raise TypeError(f"expected a CommunityCover, got {type(cover).__name__}")
    if len(cover.membership) != graph.node_count:
        raise ValueError(
            f"cover is over {len(cover.membership)} nodes, graph has "
            f"{graph.node_count}"
        )
    return cover


def check_fraction(value, name: str = "fraction") -> float:
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number")
    value = float(value)
    if not 0.0 <= value <= 1.0 or np.isnan(value):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def check_probability(value, name: str) -> float:
    return check_fraction(value, name=name)


def check_seed(value, name: str = "seed") -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer")
    return int(value)
