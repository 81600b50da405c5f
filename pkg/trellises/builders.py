"""
Trellis constructions: elementary, product, BCJR and KV-trellises.

Rows of G keep their input order everywhere in this module; the end-point
indexing used for dual characteristic matrices lives in ``char_duality``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

import config
from algebra.codes import CharacteristicPair, characteristic_spans, code_from_generator
from algebra.linalg import (
    FieldMatrix,
    PrimeField,
    echelon,
    field_of,
    left_kernel,
    matmul,
    rank,
    to_ints,
    vstack,
)
from algebra.spans import Span, is_span_of
from errors import (
    BadSelectionSize,
    InvalidSpan,
    NotOrthogonal,
    RankDeficient,
    SupportError,
    VerificationFailed,
    ZeroRow,
)
from trellises.trellis import ComplexityProfile, LinearTrellis, build_trellis, complexity

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProductTrellis:
    """T_{G,S}: the section-wise product of the elementary trellises of the rows of G."""

    base: LinearTrellis
    G: FieldMatrix
    spans: Tuple[Span, ...]
    M: Tuple[FieldMatrix, ...]

    @property
    def n(self) -> int:
        return self.base.n


@dataclass(frozen=True, eq=False)
class BcjrTrellis:
    """
    T_(G,H,D) with its row-aligned state matrices.

    N[i] is r×(n-k); row l of N[i] is the state of generator l at time i.
    """

    base: LinearTrellis
    G: FieldMatrix
    H: FieldMatrix
    D: FieldMatrix
    N: Tuple[FieldMatrix, ...]
    spans: Optional[Tuple[Span, ...]] = None

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def field(self) -> PrimeField:
        return self.base.field


def _check_rows(G: FieldMatrix, spans: Sequence[Span]):
    if G.shape[0] != len(spans):
        raise InvalidSpan(f"{G.shape[0]} rows but {len(spans)} spans")
    values = to_ints(G)
    for l, span in enumerate(spans):
        if not np.any(values[l]):
            raise ZeroRow(f"Row {l} of the generator matrix is zero")
        if span.n != G.shape[1] or not is_span_of(G[l], span):
            raise InvalidSpan(f"{span} is not a span of row {l}")


def _check_orthogonal(G: FieldMatrix, H: FieldMatrix):
    if G.shape[1] != H.shape[1]:
        raise NotOrthogonal(f"G has {G.shape[1]} columns but H has {H.shape[1]}")
    if np.any(to_ints(matmul(G, H.T))):
        raise NotOrthogonal("G·Hᵀ is not zero")


def indicator_matrices(spans: Sequence[Span], n: int) -> List[np.ndarray]:
    """M_j = diag(μ_j) with μ_j^l = 1 iff j lies in span l."""
    return [
        np.diag([1 if span.contains(j) else 0 for span in spans]).astype(np.int64).reshape(len(spans), len(spans))
        for j in range(n)
    ]


def product_trellis(G: FieldMatrix, spans: Sequence[Span]) -> ProductTrellis:
    """
    Product trellis T_{G,S}.

    Args:
        G: r×n matrix with nonzero rows
        spans: A span of each row

    Raises:
        ZeroRow: some row of G is zero
        InvalidSpan: some span is not a span of its row
    """
    _check_rows(G, spans)
    field = field_of(G)
    n = G.shape[1]
    values = to_ints(G)
    M = indicator_matrices(spans, n)
    states = [field.matrix(M[j], cols=len(spans)) for j in range(n)]
    transitions = [
        field.matrix(np.hstack([M[j], values[:, j:j + 1], M[(j + 1) % n]]), cols=2 * len(spans) + 1)
        for j in range(n)
    ]
    base = build_trellis(field, states, transitions)
    return ProductTrellis(base=base, G=G, spans=tuple(spans), M=tuple(states))


def elementary_trellis(c, s: Span, field: Optional[PrimeField] = None) -> LinearTrellis:
    """Trellis of one vector with one of its spans; V_j = F exactly for j in the span."""
    if field is None:
        field = field_of(c) if isinstance(c, FieldMatrix) else PrimeField(config.DEFAULT_FIELD_ORDER)
    row = field.matrix(to_ints(c) if isinstance(c, FieldMatrix) else c)
    if not np.any(to_ints(row)):
        raise InvalidSpan("The zero vector has no span")
    return product_trellis(row, [s]).base


def predicted_product_profile(spans: Sequence[Span]) -> ComplexityProfile:
    """
    SCP and ECP of a product trellis with distinct starts and ends:
    s_j counts spans containing j, e_j adds one for each span starting at j.
    """
    n = spans[0].n
    scp = tuple(sum(span.contains(j) for span in spans) for j in range(n))
    ecp = tuple(scp[j] + sum(span.a == j for span in spans) for j in range(n))
    return ComplexityProfile(scp=scp, ecp=ecp)


def bcjr_displacement(G: FieldMatrix, H: FieldMatrix, spans: Sequence[Span]) -> FieldMatrix:
    """
    Displacement matrix with row l = Σ_{j=a_l}^{n-1} g_lj H_j (no wraparound).

    Raises:
        NotOrthogonal: G·Hᵀ ≠ 0
        InvalidSpan: a span does not belong to its row
    """
    _check_orthogonal(G, H)
    _check_rows(G, spans)
    field = field_of(G)
    g, h = to_ints(G), to_ints(H)
    rows = [g[l, span.a:] @ h[:, span.a:].T for l, span in enumerate(spans)]
    return field.matrix(np.array(rows).reshape(G.shape[0], H.shape[0]) % field.p, cols=H.shape[0])


def state_matrices(G: FieldMatrix, H: FieldMatrix, D: FieldMatrix) -> List[FieldMatrix]:
    """N_0 = D and N_i = N_{i-1} + G_{i-1}ᵀ H_{i-1}."""
    field = field_of(G)
    g, h = to_ints(G), to_ints(H)
    current = to_ints(D).reshape(G.shape[0], H.shape[0])
    N = []
    for i in range(G.shape[1]):
        N.append(field.matrix(current % field.p, cols=H.shape[0]))
        current = current + np.outer(g[:, i], h[:, i])
    return N


def bcjr_trellis(G: FieldMatrix, H: FieldMatrix, D: FieldMatrix,
                 spans: Optional[Sequence[Span]] = None) -> BcjrTrellis:
    """
    BCJR trellis T_(G,H,D); G may be rank deficient.

    Raises:
        NotOrthogonal: G·Hᵀ ≠ 0, so the recursion would not close
    """
    _check_orthogonal(G, H)
    if D.shape != (G.shape[0], H.shape[0]):
        raise ValueError(f"Displacement has shape {D.shape}, expected {(G.shape[0], H.shape[0])}")
    field = field_of(G)
    n = G.shape[1]
    N = state_matrices(G, H, D)
    g = to_ints(G)
    width = H.shape[0]
    transitions = [
        field.matrix(np.hstack([to_ints(N[i]), g[:, i:i + 1], to_ints(N[(i + 1) % n])]), cols=2 * width + 1)
        for i in range(n)
    ]
    base = build_trellis(field, N, transitions)
    return BcjrTrellis(base=base, G=G, H=H, D=D, N=tuple(N), spans=tuple(spans) if spans else None)


def bcjr_trellis_from_spans(G: FieldMatrix, H: FieldMatrix, spans: Sequence[Span]) -> BcjrTrellis:
    """T_(G,H,S): the BCJR trellis whose displacement comes from the span list."""
    return bcjr_trellis(G, H, bcjr_displacement(G, H, spans), spans=spans)


def shift_trellis(t: BcjrTrellis, a: int) -> BcjrTrellis:
    """BCJR trellis of the generators and checks rotated left by ``a``; N*_i = N_{i+a}."""
    n = t.n
    steps = a % n
    field = t.field
    G = field.matrix(np.roll(to_ints(t.G), -steps, axis=1))
    H = field.matrix(np.roll(to_ints(t.H), -steps, axis=1), cols=n)
    spans = tuple(span.shift(steps) for span in t.spans) if t.spans else None
    return bcjr_trellis(G, H, t.N[steps], spans=spans)


def _row_zero(matrix: FieldMatrix, l: int) -> bool:
    return not np.any(to_ints(matrix)[l])


def kv_clause_failures(t: BcjrTrellis) -> List[Tuple[str, int]]:
    """
    (clause, time) pairs where the zero-row pattern fails.

    Clause "zero_rows": row l of N_j is zero for j outside span l.
    Clause "independent_rows": the rows of N_j for spans containing j are independent.
    """
    if t.spans is None:
        raise InvalidSpan("KV clauses need the span list of the generators")
    failures = []
    for j, N_j in enumerate(t.N):
        inside = [l for l, span in enumerate(t.spans) if span.contains(j)]
        outside = [l for l in range(len(t.spans)) if l not in inside]
        if not all(_row_zero(N_j, l) for l in outside):
            failures.append(("zero_rows", j))
        if inside and rank(N_j[inside]) != len(inside):
            failures.append(("independent_rows", j))
    return failures


def is_kv_trellis(t: BcjrTrellis) -> bool:
    """Full-rank generators on characteristic spans with the KV zero-row pattern."""
    if t.spans is None or rank(t.G) != t.G.shape[0]:
        return False
    try:
        characteristic = set(characteristic_spans(code_from_generator(t.field.p, t.G)))
    except SupportError:
        return False
    if not characteristic.issuperset(t.spans):
        return False
    return not kv_clause_failures(t)


def kv_trellis(x: CharacteristicPair, H: FieldMatrix, selection: Sequence[int]) -> BcjrTrellis:
    """
    KV-trellis on a k-subset of the rows of a characteristic pair.

    Args:
        x: Characteristic pair of C
        H: Parity-check matrix of C
        selection: Row indices into x

    Raises:
        BadSelectionSize: the selection does not have k distinct rows
        RankDeficient: the selected rows are dependent
        VerificationFailed: a zero-row clause or the product profile comparison fails
    """
    k = rank(x.X)
    rows = sorted(set(selection))
    if len(rows) != k or len(rows) != len(selection):
        raise BadSelectionSize(f"Selection {list(selection)} must name {k} distinct rows")
    G = x.X[rows]
    selected_rank = rank(G)
    if selected_rank < k:
        raise RankDeficient(
            f"Rows {rows} have rank {selected_rank} < {k}", rank=selected_rank, expected=k
        )
    spans = [x.spans[i] for i in rows]
    trellis = bcjr_trellis_from_spans(G, H, spans)
    failures = kv_clause_failures(trellis)
    if failures:
        clause, j = failures[0]
        raise VerificationFailed(f"KV clause {clause} fails at time {j}", clause=clause)
    expected = predicted_product_profile(spans)
    if complexity(trellis.base) != expected:
        raise VerificationFailed(
            f"Profile {complexity(trellis.base)} differs from product profile {expected}",
            clause="profile",
        )
    logger.debug("KV-trellis on rows %s: SCP %s", rows, expected.scp)
    return trellis


def kv_selections(x: CharacteristicPair) -> List[Tuple[int, ...]]:
    """Every full-rank k-subset of rows, lexicographic."""
    k = rank(x.X)
    return [
        rows for rows in itertools.combinations(range(len(x)), k)
        if rank(x.X[list(rows)]) == k
    ]


def intersect_row_spaces(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """Echelon basis of row(a) ∩ row(b)."""
    field = field_of(a)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return field.zeros(0, a.shape[1])
    negated = field.matrix(-to_ints(b))
    coefficients = left_kernel(vstack([a, negated]))
    if coefficients.shape[0] == 0:
        return field.zeros(0, a.shape[1])
    return echelon(matmul(coefficients[:, : a.shape[0]], a))


def intersection_of_images(N: Sequence[FieldMatrix]) -> FieldMatrix:
    """Basis of ∩_j im N_j."""
    current = echelon(N[0])
    for matrix in N[1:]:
        current = intersect_row_spaces(current, echelon(matrix))
    return current


def end_row_failures(t: BcjrTrellis) -> List[int]:
    """
    Times j where H_j fails its relation to the state rows.

    At an end point j = b_l, H_j must equal -g_lj^{-1} row(N_j, l); at every
    other time H_j must lie outside im N_j.
    """
    if t.spans is None:
        raise InvalidSpan("End-row relations need the span list of the generators")
    field = t.field
    h, g = to_ints(t.H), to_ints(t.G)
    failures = []
    for j, N_j in enumerate(t.N):
        ends = [l for l, span in enumerate(t.spans) if span.b == j]
        column = field.matrix(h[:, j])
        if ends:
            l = ends[0]
            scale = field.inverse(int(g[l, j]))
            expected = (-scale * to_ints(N_j)[l]) % field.p
            if not np.array_equal(expected, h[:, j]):
                failures.append(j)
        elif rank(vstack([N_j, column])) == rank(N_j):
            failures.append(j)
    return failures


def same_bcjr(t1: BcjrTrellis, t2: BcjrTrellis) -> bool:
    """Matrix equality of G and of every N_j."""
    if t1.n != t2.n or t1.G.shape != t2.G.shape:
        return False
    if not np.array_equal(to_ints(t1.G), to_ints(t2.G)):
        return False
    return all(np.array_equal(to_ints(a), to_ints(b)) for a, b in zip(t1.N, t2.N))
