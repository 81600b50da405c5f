"""Plain-text matrix displays for terminal output and fixture diffs."""

from typing import List, Sequence, Union

import numpy as np

from algebra.linalg import FieldMatrix, to_ints
from trellises.builders import BcjrTrellis, ProductTrellis


def format_matrix(m: Union[FieldMatrix, np.ndarray], separator: str = "") -> str:
    """Rows on separate lines; entries joined by ``separator`` ("1001" style by default)."""
    values = to_ints(m) if isinstance(m, FieldMatrix) else np.asarray(m)
    return "\n".join(separator.join(str(int(x)) for x in row) for row in values)


def staggered(states: Sequence[FieldMatrix], G: FieldMatrix) -> str:
    """
    The row-aligned display (S_0 | G_0ᵀ | S_1 | G_1ᵀ | … | S_0).

    Each block is printed with single-space entries; blocks are separated by
    " | " so the columns line up across rows.
    """
    g = to_ints(G)
    n = g.shape[1]
    blocks: List[np.ndarray] = []
    for j in range(n):
        blocks.append(to_ints(states[j]))
        blocks.append(g[:, j:j + 1])
    blocks.append(to_ints(states[0]))
    lines = []
    for row in range(g.shape[0]):
        cells = [" ".join(str(int(x)) for x in block[row]) if block.shape[1] else "-" for block in blocks]
        lines.append(" | ".join(cells))
    return "\n".join(lines)


def display_trellis(t: Union[BcjrTrellis, ProductTrellis]) -> str:
    if isinstance(t, BcjrTrellis):
        return staggered(t.N, t.G)
    return staggered(t.M, t.G)
