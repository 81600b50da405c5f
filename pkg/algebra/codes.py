"""
Linear block codes, shortest spans, and characteristic pairs.

A characteristic pair (X, T) lists n codewords with n spans such that the
codewords generate C, starts and ends of the spans are all distinct, and each
time index lies in exactly n-k spans.  T is unique; the generators are not.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import config
from algebra.linalg import (
    FieldMatrix,
    PrimeField,
    echelon,
    field_of,
    left_kernel,
    matmul,
    rank,
    row_space_elements,
    row_space_equal,
    to_ints,
)
from algebra.spans import Span, is_span_of, spans_of_vector
from errors import (
    InvalidCharacteristicPair,
    SupportError,
    TooLarge,
    UnsupportedPosition,
    ZeroCode,
)

logger = logging.getLogger(__name__)

LEX_FIRST = "lex"
NORMALIZED = "normalized"


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A code C = im G = ker Hᵀ with canonical echelon G and H."""

    field: PrimeField
    G: FieldMatrix
    H: FieldMatrix
    name: str = dataclass_field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @cached_property
    def support(self) -> Tuple[bool, ...]:
        return tuple(bool(x) for x in np.any(to_ints(self.G), axis=0))

    @cached_property
    def dual_support(self) -> Tuple[bool, ...]:
        if self.H.shape[0] == 0:
            return tuple(False for _ in range(self.n))
        return tuple(bool(x) for x in np.any(to_ints(self.H), axis=0))

    @property
    def has_full_support(self) -> bool:
        return all(self.support)

    @property
    def dual_has_full_support(self) -> bool:
        return all(self.dual_support)

    def require_full_support(self):
        """Raise SupportError unless both C and its dual have support {0,…,n-1}."""
        missing = [j for j, s in enumerate(self.support) if not s]
        missing_dual = [j for j, s in enumerate(self.dual_support) if not s]
        if missing:
            raise SupportError(f"Code has no support at positions {missing}")
        if missing_dual:
            raise SupportError(f"Dual code has no support at positions {missing_dual}")

    def contains(self, vector) -> bool:
        word = self.field.vector(to_ints(vector) if hasattr(vector, "view") else vector)
        if self.H.shape[0] == 0:
            return True
        return not np.any(to_ints(matmul(self.H, word.reshape(-1, 1))))

    def codewords(self, budget: Optional[int] = None) -> FieldMatrix:
        """Every codeword, one per row (the zero word first)."""
        return row_space_elements(self.G, budget)

    def is_self_dual(self) -> bool:
        return self.H.shape == self.G.shape and row_space_equal(self.G, self.H)

    def subcode_basis(self, positions: Iterable[int]) -> FieldMatrix:
        """Echelon basis of the codewords supported inside ``positions``."""
        allowed = set(positions)
        outside = [j for j in range(self.n) if j not in allowed]
        if not outside:
            return self.G
        kernel = left_kernel(self.G[:, outside])
        if kernel.shape[0] == 0:
            return self.field.zeros(0, self.n)
        return echelon(matmul(kernel, self.G))

    def __str__(self):
        label = f"{self.name} " if self.name else ""
        return f"{label}[{self.n},{self.k}] code over {self.field}"


def code_from_generator(p: int, rows, name: str = "") -> LinearCode:
    """
    Build a code from (possibly redundant) generator rows.

    Args:
        p: Field order
        rows: Generator rows, nested ints or a field matrix
        name: Optional label carried into reports

    Returns:
        LinearCode with canonical G and H

    Raises:
        ZeroCode: all rows are zero
    """
    field = PrimeField(p)
    matrix = rows if isinstance(rows, FieldMatrix) else field.matrix(rows)
    G = echelon(matrix)
    if G.shape[0] == 0:
        raise ZeroCode("Generator rows span the zero code")
    H = left_kernel(G.T)
    return LinearCode(field=field, G=G, H=H, name=name)


def code_from_parity_check(p: int, rows, name: str = "") -> LinearCode:
    """The code ker Hᵀ for the given parity-check rows."""
    field = PrimeField(p)
    H = rows if isinstance(rows, FieldMatrix) else field.matrix(rows)
    generators = left_kernel(H.T)
    if generators.shape[0] == 0:
        raise ZeroCode("Parity checks leave only the zero code")
    return code_from_generator(p, generators, name=name)


def dual_code(c: LinearCode) -> LinearCode:
    name = f"{c.name}-dual" if c.name else ""
    if c.H.shape[0] == 0:
        # dual of the full space
        return LinearCode(field=c.field, G=c.field.zeros(0, c.n), H=c.field.identity(c.n), name=name)
    return code_from_generator(c.field.p, c.H, name=name)


def cyclic_shift(c: LinearCode, a: int) -> LinearCode:
    """The code with every generator column rotated left by ``a``."""
    rotated = np.roll(to_ints(c.G), -a, axis=1)
    return code_from_generator(c.field.p, rotated, name=c.name)


def _realizes(code: LinearCode, span: Span) -> bool:
    basis = code.subcode_basis(span.closed_indices())
    if basis.shape[0] == 0:
        return False
    values = to_ints(basis)
    return bool(np.any(values[:, span.a])) and bool(np.any(values[:, span.b]))


def shortest_span_from(c: LinearCode, a: int) -> Span:
    """
    The shortest span (a, b] of any codeword, scanning b outward from a.

    A codeword with span exactly (a,b] exists iff the subcode supported on
    [a,b] is nonzero at both a and b.

    Raises:
        UnsupportedPosition: no codeword is nonzero at a
    """
    if not np.any(to_ints(c.G[:, a])):
        raise UnsupportedPosition(f"No codeword is nonzero at position {a}")
    for length in range(c.n):
        span = Span(a, (a + length) % c.n, c.n)
        if _realizes(c, span):
            return span
    raise UnsupportedPosition(f"No span starts at position {a}")


def shortest_span_to(c: LinearCode, b: int) -> Span:
    """Greedy by end point: the shortest span (a, b] ending at ``b``."""
    if not np.any(to_ints(c.G[:, b])):
        raise UnsupportedPosition(f"No codeword is nonzero at position {b}")
    for length in range(c.n):
        span = Span((b - length) % c.n, b, c.n)
        if _realizes(c, span):
            return span
    raise UnsupportedPosition(f"No span ends at position {b}")


def characteristic_spans(c: LinearCode) -> List[Span]:
    """Characteristic span list, row a starting at a."""
    c.require_full_support()
    return [shortest_span_from(c, a) for a in range(c.n)]


def greedy_spans_by_end(c: LinearCode) -> List[Span]:
    c.require_full_support()
    return [shortest_span_to(c, b) for b in range(c.n)]


def span_generators(c: LinearCode, span: Span, budget: Optional[int] = None) -> FieldMatrix:
    """All codewords whose span set contains ``span``."""
    words = to_ints(row_space_elements(c.subcode_basis(span.closed_indices()), budget))
    mask = (words[:, span.a] != 0) & (words[:, span.b] != 0)
    return c.field.matrix(words[mask], cols=c.n)


def _cyclic_key(word: np.ndarray, start: int) -> tuple:
    return tuple(np.roll(word, -start).tolist())


def lex_first_generator(c: LinearCode, span: Span, budget: Optional[int] = None) -> FieldMatrix:
    """Smallest generator of ``span`` with coordinates read cyclically from its start."""
    candidates = to_ints(span_generators(c, span, budget))
    best = min(candidates, key=lambda word: _cyclic_key(word, span.a))
    return c.field.vector(best)


def normalized_generator(c: LinearCode, span: Span) -> FieldMatrix:
    """First echelon solution for ``span``, scaled to 1 at the span start."""
    basis = to_ints(c.subcode_basis(span.closed_indices()))
    both = [row for row in basis if row[span.a] and row[span.b]]
    if both:
        word = both[0]
    else:
        at_start = next(row for row in basis if row[span.a])
        at_end = next(row for row in basis if row[span.b])
        word = (at_start + at_end) % c.field.p
    scale = c.field.inverse(int(word[span.a]))
    return c.field.vector(word * scale)


@dataclass(frozen=True, eq=False)
class CharacteristicPair:
    """Generator matrix X (n×n) with its span list T."""

    X: FieldMatrix
    spans: Tuple[Span, ...]

    def __post_init__(self):
        if self.X.shape[0] != len(self.spans):
            raise InvalidCharacteristicPair(
                f"{self.X.shape[0]} rows but {len(self.spans)} spans",
                failed_clauses=["shape"],
            )

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def field(self) -> PrimeField:
        return field_of(self.X)

    def __len__(self):
        return len(self.spans)

    def generates(self, code: LinearCode) -> bool:
        return row_space_equal(self.X, code.G)

    def spans_valid(self) -> bool:
        return all(
            span.n == self.n and is_span_of(self.X[l], span)
            for l, span in enumerate(self.spans)
        )

    def endpoints_distinct(self) -> bool:
        starts = [span.a for span in self.spans]
        ends = [span.b for span in self.spans]
        return len(set(starts)) == len(starts) == self.n and len(set(ends)) == len(ends) == self.n

    def coverage_exact(self, k: int) -> bool:
        return all(
            sum(span.contains(j) for span in self.spans) == self.n - k
            for j in range(self.n)
        )

    def clause_report(self, code: LinearCode) -> Dict[str, bool]:
        return {
            "generates_code": self.generates(code),
            "spans_valid": self.spans_valid(),
            "endpoints_distinct": self.endpoints_distinct(),
            "coverage_exact": self.coverage_exact(code.k),
        }

    def validate(self, code: LinearCode):
        """Raise InvalidCharacteristicPair naming every failed clause."""
        report = self.clause_report(code)
        failed = [clause for clause, ok in report.items() if not ok]
        if failed:
            raise InvalidCharacteristicPair(
                f"Not a characteristic pair of {code}: failed {', '.join(failed)}",
                failed_clauses=failed,
            )

    def sorted_by_end(self) -> Tuple["CharacteristicPair", List[int]]:
        """
        Reorder rows so that row l has its span ending at l.

        Returns:
            (sorted pair, order) where order[i] is the end point of input row i
        """
        order = [span.b for span in self.spans]
        if sorted(order) != list(range(self.n)):
            raise InvalidCharacteristicPair(
                "End points are not distinct", failed_clauses=["endpoints_distinct"]
            )
        rows = [order.index(l) for l in range(self.n)]
        return CharacteristicPair(self.X[rows], tuple(self.spans[i] for i in rows)), order

    def index_of_span(self, span: Span) -> int:
        return self.spans.index(span)

    def rows_with_spans(self, spans: Sequence[Span]) -> List[int]:
        return [self.index_of_span(span) for span in spans]

    def to_dict(self) -> dict:
        return {"X": to_ints(self.X).tolist(), "spans": [str(span) for span in self.spans]}


def characteristic_pair(c: LinearCode, tie_break: str = LEX_FIRST,
                        budget: Optional[int] = None) -> CharacteristicPair:
    """
    Greedy characteristic pair, row a starting at a.

    Args:
        c: Code with full support on both sides
        tie_break: "lex" for the lexicographically first generator per span,
            "normalized" for the first echelon generator scaled to 1 at its start
        budget: Enumeration budget for the lex policy

    Raises:
        SupportError: the code or its dual lacks full support
    """
    spans = characteristic_spans(c)
    if tie_break == LEX_FIRST:
        rows = [lex_first_generator(c, span, budget) for span in spans]
    elif tie_break == NORMALIZED:
        rows = [normalized_generator(c, span) for span in spans]
    else:
        raise ValueError(f"Unknown tie-break policy {tie_break!r}")
    pair = CharacteristicPair(c.field.matrix(np.vstack([to_ints(row) for row in rows])), tuple(spans))
    pair.validate(c)
    logger.debug("Characteristic spans of %s: %s", c, ", ".join(map(str, spans)))
    return pair


def count_characteristic_matrices(c: LinearCode, normalized: bool = True,
                                  budget: Optional[int] = None) -> int:
    """
    Number of characteristic matrices with the code's span list.

    Choices per span are independent, so the count is a product of per-span
    generator counts.

    Raises:
        TooLarge: q^k exceeds the enumeration budget
    """
    budget = budget or config.ENUMERATION_BUDGET
    if c.field.p ** c.k > budget:
        raise TooLarge(f"{c.field.p}^{c.k} codewords exceed the enumeration budget {budget}")
    total = 1
    for span in characteristic_spans(c):
        words = to_ints(span_generators(c, span, budget))
        if normalized:
            words = words[words[:, span.a] == 1]
        total *= len(words)
    return total


def shortest_generator_violations(c: LinearCode, budget: Optional[int] = None) -> List[Tuple[Span, Span]]:
    """
    Exhaustive oracle: pairs (codeword span, characteristic span) where the
    characteristic span starting at the same point is not contained in it.
    """
    characteristic = characteristic_spans(c)
    violations = []
    for word in to_ints(c.codewords(budget)):
        if not np.any(word):
            continue
        for span in spans_of_vector(word):
            shortest = characteristic[span.a]
            if shortest.length > span.length:
                violations.append((span, shortest))
    return violations


def random_code(p: int, n: int, k: int, seed: Optional[int] = None,
                max_tries: int = 1000) -> LinearCode:
    """
    Random [n,k] code over GF(p) whose code and dual both have full support.

    Raises:
        ValueError: no such code was drawn within ``max_tries`` attempts
    """
    if not 0 < k < n:
        raise ValueError(f"Need 0 < k < n, got k={k}, n={n}")
    field = PrimeField(p)
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        rows = field.gf.Random((k, n), seed=int(rng.integers(2**31)))
        if rank(rows) < k:
            continue
        code = code_from_generator(p, rows)
        if code.has_full_support and code.dual_has_full_support:
            return code
    raise ValueError(f"No [{n},{k}] code with full supports found over GF({p})")
