"""Explicit vertex/edge graphs of small trellises, built with networkx."""

from __future__ import annotations

import logging
from typing import Optional, Set, Tuple

import networkx as nx
import numpy as np

import config
from algebra.linalg import echelon, row_space_elements, to_ints
from errors import TooLarge
from trellises.trellis import LinearTrellis

logger = logging.getLogger(__name__)

Vertex = Tuple[int, Tuple[int, ...]]


def _vertex_count(t: LinearTrellis) -> int:
    return sum(t.field.p ** s for s in t.state_dims)


def explicit_graph(t: LinearTrellis, budget: Optional[int] = None) -> nx.MultiDiGraph:
    """
    Enumerate the trellis as a directed multigraph.

    Nodes are (time, state tuple) pairs in ambient coordinates; each edge of
    section i joins (i, v) to (i+1 mod n, w) and carries ``label`` and ``section``.

    Raises:
        TooLarge: the vertex count exceeds the budget
    """
    budget = budget or config.VERTEX_BUDGET
    total = _vertex_count(t)
    if total > budget:
        raise TooLarge(f"Trellis has {total} vertices, above the budget {budget}")

    graph = nx.MultiDiGraph(n=t.n, p=t.field.p)
    for i, section in enumerate(t.sections):
        for state in to_ints(row_space_elements(section.state_basis, budget)):
            graph.add_node((i, tuple(int(x) for x in state)), time=i)

    edge_budget = max(budget, config.ENUMERATION_BUDGET)
    for i, section in enumerate(t.sections):
        j = (i + 1) % t.n
        for row in to_ints(row_space_elements(echelon(section.transitions), edge_budget)):
            start = tuple(int(x) for x in row[: section.ambient_in])
            label = int(row[section.ambient_in])
            end = tuple(int(x) for x in row[section.ambient_in + 1:])
            graph.add_edge((i, start), (j, end), label=label, section=i)
    logger.debug("Explicit trellis: %d vertices, %d edges", graph.number_of_nodes(), graph.number_of_edges())
    return graph


def vertex_counts(graph: nx.MultiDiGraph) -> Tuple[int, ...]:
    counts = [0] * graph.graph["n"]
    for _, data in graph.nodes(data=True):
        counts[data["time"]] += 1
    return tuple(counts)


def cycle_label_set(t: LinearTrellis, budget: Optional[int] = None) -> Set[Tuple[int, ...]]:
    """
    Labels of every cycle of length n, found by walking the explicit graph.

    Intended as an independent check of ``label_code`` on small trellises.
    """
    graph = explicit_graph(t, budget)
    labels: Set[Tuple[int, ...]] = set()
    starts = [node for node, data in graph.nodes(data=True) if data["time"] == 0]
    for origin in starts:
        # (vertex, labels so far); n steps always return to time 0
        frontier = [(origin, ())]
        for _ in range(t.n):
            following = []
            for vertex, word in frontier:
                for _, target, data in graph.out_edges(vertex, data=True):
                    following.append((target, word + (data["label"],)))
            frontier = list(set(following))
        labels.update(word for vertex, word in frontier if vertex == origin)
    return labels


def label_set_of_code(generators, budget: Optional[int] = None) -> Set[Tuple[int, ...]]:
    """All rows of a row space as tuples; pairs with ``cycle_label_set``."""
    words = to_ints(row_space_elements(generators, budget))
    return {tuple(int(x) for x in np.asarray(word)) for word in words}
