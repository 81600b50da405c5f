"""Graphviz DOT rendering of small trellises."""

from typing import Optional, Tuple

from trellises.explicit import explicit_graph
from trellises.trellis import LinearTrellis


def vertex_name(time: int, state: Tuple[int, ...]) -> str:
    digits = "".join(str(x) for x in state) or "0"
    return f"t{time}_{digits}"


def export_dot(t: LinearTrellis, budget: Optional[int] = None) -> str:
    """
    DOT digraph of the explicit trellis.

    Edges labelled zero are dashed and all others solid.  Vertices and edges
    are sorted, so equal trellises always render to the same text.

    Raises:
        TooLarge: the trellis has more vertices than the budget allows
    """
    graph = explicit_graph(t, budget)
    lines = ["digraph trellis {", "  rankdir=LR;"]
    for time in range(t.n):
        states = sorted(state for (i, state) in graph.nodes if i == time)
        names = " ".join(f'"{vertex_name(time, state)}";' for state in states)
        lines.append(f"  {{ rank=same; {names} }}")

    edges = sorted(
        (source, target, data["label"])
        for source, target, data in graph.edges(data=True)
    )
    for (i, start), (j, end), label in edges:
        style = "dashed" if label == 0 else "solid"
        lines.append(
            f'  "{vertex_name(i, start)}" -> "{vertex_name(j, end)}" [label="{label}", style={style}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
