"""
Dual characteristic matrices and the KV duality claims built on them.

Given a characteristic pair (X, T) of C = ker Hᵀ, re-sorted so that row l has
span (a_l, l], the construction finds for every m the unique v_m with

    X[rows ≠ m, m] = N_{m+1}[rows ≠ m] · v_mᵀ

where N_j are the state matrices of T_(X,H,T).  The dual codewords
c^m = v_m·H with spans (m, a_m] form a characteristic matrix Y of C⊥ whose
dual selections pair KV-trellises of C with KV-trellises of C⊥.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.codes import CharacteristicPair, code_from_generator, code_from_parity_check
from algebra.linalg import FieldMatrix, field_of, matmul, rank, row_space_equal, solve_unique, to_ints
from algebra.spans import Span, is_span_of
from errors import (
    BadSelectionSize,
    DegeneratePairing,
    DualityFailed,
    InvalidCharacteristicPair,
    NoSolution,
    NotOrthogonal,
    NotUnique,
    NoUniqueSolution,
    RankDeficient,
    SymmetryFailed,
    VerificationFailed,
)
from trellises.builders import (
    BcjrTrellis,
    bcjr_displacement,
    bcjr_trellis,
    bcjr_trellis_from_spans,
    product_trellis,
)
from trellises.dualization import StatePairing, local_dual
from trellises.isomorphism import IsomorphismWitness, is_isomorphic
from trellises.trellis import LinearTrellis, build_trellis, complexity

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DualCharResult:
    """
    Output of the dual characteristic construction.

    Y and v are indexed by the dual span start m; ``primal`` is the input pair
    re-sorted by end point and ``input_order[i]`` is the end point of input row i.
    """

    Y: FieldMatrix
    hat_spans: Tuple[Span, ...]
    v: FieldMatrix
    primal: CharacteristicPair
    H: FieldMatrix
    N: Tuple[FieldMatrix, ...]
    input_order: Tuple[int, ...]
    source: CharacteristicPair

    @property
    def n(self) -> int:
        return self.Y.shape[1]

    @property
    def pair(self) -> CharacteristicPair:
        return CharacteristicPair(self.Y, self.hat_spans)

    def y_in_input_order(self) -> CharacteristicPair:
        """Row i is the dual generator whose span reverses the span of input row i."""
        rows = list(self.input_order)
        return CharacteristicPair(self.Y[rows], tuple(self.hat_spans[m] for m in rows))

    def to_dict(self) -> dict:
        return {
            "Y": to_ints(self.Y).tolist(),
            "spans": [str(span) for span in self.hat_spans],
            "v": to_ints(self.v).tolist(),
            "primal_order": list(self.input_order),
        }


def _require_full_row_rank(H: FieldMatrix):
    if rank(H) != H.shape[0]:
        raise NotOrthogonal(f"Parity-check matrix has rank {rank(H)} but {H.shape[0]} rows")


def _dual_states(v: np.ndarray, span: Span, width: int) -> List[np.ndarray]:
    """w_{m,j} = v_m on the dual span and 0 elsewhere."""
    zero = np.zeros(width, dtype=np.int64)
    return [v if span.contains(j) else zero for j in range(span.n)]


def _cycle_failure(N: List[np.ndarray], X: np.ndarray, keep: List[int], states: List[np.ndarray],
                   c: np.ndarray, p: int) -> Optional[int]:
    """First time j where N_j w_j + X_j c_j - N_{j+1} w_{j+1} is nonzero on the kept rows."""
    n = len(N)
    for j in range(n):
        following = (j + 1) % n
        residue = N[j][keep] @ states[j] + X[keep, j] * c[j] - N[following][keep] @ states[following]
        if np.any(residue % p):
            return j
    return None


def dual_characteristic_pair(x: CharacteristicPair, H: FieldMatrix) -> DualCharResult:
    """
    Construct the dual characteristic matrix Y of C⊥ from (X, T).

    Every m is verified eagerly: c^m has span (m, a_m] with c^m_m = 1, the
    states N_j^m v_mᵀ vanish off that span, and the three-term cycle identity
    holds at every time.

    Args:
        x: Characteristic pair of C = ker Hᵀ, rows in any order
        H: Parity-check matrix with n-k independent rows

    Returns:
        DualCharResult

    Raises:
        SupportError: C or C⊥ lacks full support
        InvalidCharacteristicPair: (X, T) is not a characteristic pair of ker Hᵀ
        NoUniqueSolution: the solve for v_m is singular or inconsistent
        VerificationFailed: a construction identity fails, naming the clause
    """
    field = x.field
    p = field.p
    _require_full_row_rank(H)
    code = code_from_parity_check(p, H)
    code.require_full_support()
    x.validate(code)
    primal, order = x.sorted_by_end()
    n = primal.n
    width = H.shape[0]
    bcjr = bcjr_trellis_from_spans(primal.X, H, primal.spans)
    N = [to_ints(N_j) for N_j in bcjr.N]
    X = to_ints(primal.X)
    h = to_ints(H)

    v_rows, y_rows, hat_spans = [], [], []
    for m in range(n):
        keep = [l for l in range(n) if l != m]
        try:
            v = to_ints(solve_unique(field.matrix(N[(m + 1) % n][keep], cols=width),
                                     field.vector(X[keep, m])))
        except (NoSolution, NotUnique) as e:
            raise NoUniqueSolution(f"No unique dual state vector for m={m}: {e}", m=m)
        c = (v @ h) % p
        span = Span(m, primal.spans[m].a, n)
        if c[m] != 1 or not is_span_of(c, span):
            raise VerificationFailed(f"Dual codeword {m} does not have span {span} with c_m = 1",
                                     clause="span", m=m)
        for j in range(n):
            if not span.contains(j) and np.any((N[j][keep] @ v) % p):
                raise VerificationFailed(f"N_{j} v_{m} is not zero off {span}", clause="states", m=m)
        failed = _cycle_failure(N, X, keep, _dual_states(v, span, width), c, p)
        if failed is not None:
            raise VerificationFailed(f"Cycle identity fails for m={m} at time {failed}", clause="cycle", m=m)
        v_rows.append(v)
        y_rows.append(c)
        hat_spans.append(span)

    Y = field.matrix(np.array(y_rows))
    result = DualCharResult(
        Y=Y,
        hat_spans=tuple(hat_spans),
        v=field.matrix(np.array(v_rows).reshape(n, width), cols=width),
        primal=primal,
        H=H,
        N=tuple(bcjr.N),
        input_order=tuple(order),
        source=x,
    )
    try:
        result.pair.validate(code_from_generator(p, H))
    except InvalidCharacteristicPair as e:
        raise VerificationFailed(str(e), clause="characteristic_pair")
    logger.info("Dual characteristic matrix built for %s", code)
    return result


def dual_cycle_matrix(result: DualCharResult) -> FieldMatrix:
    """Row m is (w_{m,0} | c^m_0 | w_{m,1} | … | c^m_{n-1} | w_{m,0})."""
    field = result.primal.field
    width = result.H.shape[0]
    Y, v = to_ints(result.Y), to_ints(result.v)
    rows = []
    for m, span in enumerate(result.hat_spans):
        states = _dual_states(v[m], span, width)
        pieces = []
        for j in range(result.n):
            pieces.extend([states[j], [Y[m, j]]])
        pieces.append(states[0])
        rows.append(np.concatenate(pieces))
    return field.matrix(np.array(rows))


def check_dual_cycle(result: DualCharResult, m: int) -> bool:
    """The m-th dual cycle lies in the local dual of the trellis without row m."""
    p = result.primal.field.p
    keep = [l for l in range(result.n) if l != m]
    X = to_ints(result.primal.X)
    N = [to_ints(N_j) for N_j in result.N]
    v = to_ints(result.v)[m]
    c = to_ints(result.Y)[m]
    states = _dual_states(v, result.hat_spans[m], result.H.shape[0])
    return _cycle_failure(N, X, keep, states, c, p) is None


@dataclass(frozen=True, eq=False)
class DualSelection:
    """k primal rows K and the n-k dual rows whose spans are not reversals of theirs."""

    K: Tuple[int, ...]
    X_tilde: FieldMatrix
    S: Tuple[Span, ...]
    K_hat: Tuple[int, ...]
    Y_tilde: FieldMatrix
    S_hat: Tuple[Span, ...]
    v: Optional[FieldMatrix] = None

    @property
    def k(self) -> int:
        return len(self.K)

    def to_dict(self) -> dict:
        return {
            "K": list(self.K),
            "S": [str(span) for span in self.S],
            "K_hat": list(self.K_hat),
            "S_hat": [str(span) for span in self.S_hat],
        }


DualSide = Union[CharacteristicPair, DualCharResult]


def dual_selection(x: CharacteristicPair, dual: DualSide, K: Sequence[int]) -> DualSelection:
    """
    Pair k rows of X with the rows of the dual pair whose spans are not reversals.

    Raises:
        BadSelectionSize: K does not name k distinct rows
        InvalidCharacteristicPair: the dual span list does not complement the selection
    """
    k = rank(x.X)
    rows = tuple(sorted(set(K)))
    if len(rows) != k or len(rows) != len(K):
        raise BadSelectionSize(f"Selection {list(K)} must name {k} distinct rows")
    pair = dual.pair if isinstance(dual, DualCharResult) else dual
    spans = tuple(x.spans[i] for i in rows)
    reversed_spans = {span.reverse() for span in spans}
    hat_rows = tuple(m for m, span in enumerate(pair.spans) if span not in reversed_spans)
    if len(hat_rows) != x.n - k:
        raise InvalidCharacteristicPair(
            f"Dual spans leave {len(hat_rows)} rows for selection {list(rows)}, expected {x.n - k}",
            failed_clauses=["dual_selection"],
        )
    v = dual.v[list(hat_rows)] if isinstance(dual, DualCharResult) else None
    return DualSelection(
        K=rows,
        X_tilde=x.X[list(rows)],
        S=spans,
        K_hat=hat_rows,
        Y_tilde=pair.X[list(hat_rows)],
        S_hat=tuple(pair.spans[m] for m in hat_rows),
        v=v,
    )


@dataclass
class RankEquivalenceReport:
    rows: List[Dict] = dataclass_field(default_factory=list)

    @property
    def violations(self) -> List[Dict]:
        return [row for row in self.rows if not row["consistent"]]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def full_rank_selections(self) -> List[Tuple[int, ...]]:
        return [tuple(row["K"]) for row in self.rows if row["x_full"]]

    def to_dict(self) -> dict:
        return {"selections": self.rows, "violations": len(self.violations), "holds": self.holds}


def verify_rank_equivalence(x: CharacteristicPair, dual: DualSide,
                            H: Optional[FieldMatrix] = None) -> RankEquivalenceReport:
    """
    Check rk X̃ = k ⇔ {v_m} independent ⇔ rk Ỹ = n-k over every k-subset K.

    The v_m come from the construction when ``dual`` is a DualCharResult and
    are solved from Ỹ = v·H otherwise (which needs ``H``).
    """
    k = rank(x.X)
    n = x.n
    report = RankEquivalenceReport()
    for K in itertools.combinations(range(n), k):
        selection = dual_selection(x, dual, K)
        x_full = rank(selection.X_tilde) == k
        y_full = rank(selection.Y_tilde) == n - k
        v_rows = selection.v
        if v_rows is None and H is not None:
            v_rows = dual_state_vectors(selection.Y_tilde, H)
        v_independent = None if v_rows is None else rank(v_rows) == n - k
        consistent = x_full == y_full and (v_independent is None or v_independent == x_full)
        report.rows.append({
            "K": list(K),
            "x_full": x_full,
            "v_independent": v_independent,
            "y_full": y_full,
            "consistent": consistent,
        })
    if not report.holds:
        logger.warning("Rank equivalence fails for %d selections", len(report.violations))
    return report


def dual_state_vectors(Y_tilde: FieldMatrix, H: FieldMatrix) -> FieldMatrix:
    """Rows v with v·H equal to the rows of Ỹ."""
    _require_full_row_rank(H)
    field = field_of(H)
    rows = []
    for y in Y_tilde:
        try:
            rows.append(to_ints(solve_unique(H.T, y)))
        except NoSolution:
            raise InvalidCharacteristicPair("A dual row lies outside the row space of H",
                                            failed_clauses=["generates_code"])
    return field.matrix(np.array(rows, dtype=np.int64).reshape(len(rows), H.shape[0]), cols=H.shape[0])


@dataclass
class DualKvReport:
    K: Tuple[int, ...]
    primal_scp: Tuple[int, ...]
    dual_scp: Tuple[int, ...]
    equals_local_dual: bool
    witness: Optional[IsomorphismWitness]

    @property
    def scp_equal(self) -> bool:
        return self.primal_scp == self.dual_scp

    @property
    def holds(self) -> bool:
        return self.equals_local_dual and self.witness is not None and self.scp_equal

    def to_dict(self) -> dict:
        return {
            "K": list(self.K),
            "primal_scp": list(self.primal_scp),
            "dual_scp": list(self.dual_scp),
            "equals_local_dual": self.equals_local_dual,
            "isomorphic_to_product": self.witness is not None,
            "scp_equal": self.scp_equal,
            "holds": self.holds,
        }


def pairing_matrices(selection: DualSelection, v: FieldMatrix) -> List[FieldMatrix]:
    """P_j with row i equal to v of dual row i when j lies in its span, else zero."""
    field = field_of(v)
    values = to_ints(v)
    n = selection.X_tilde.shape[1]
    P = []
    for j in range(n):
        mask = np.array([[1] if span.contains(j) else [0] for span in selection.S_hat], dtype=np.int64)
        P.append(field.matrix(values * mask, cols=values.shape[1]))
    return P


def dual_kv_pair(sel: DualSelection, H: FieldMatrix) -> Tuple[BcjrTrellis, LinearTrellis, DualKvReport]:
    """
    Build T = T_(X̃,H,S), its dual T̂ with Ê_j = im(P_j | Ỹ_jᵀ | P_{j+1}), and
    check T̂ = T° under the P-pairing and T̂ ≅ T_(Ỹ,Ŝ).

    Raises:
        RankDeficient: rk X̃ < k
        DualityFailed: the pairing is degenerate or T̂ differs from T° at some section
    """
    k = sel.k
    if rank(sel.X_tilde) != k:
        raise RankDeficient(f"Selected rows {list(sel.K)} have rank {rank(sel.X_tilde)} < {k}",
                            rank=rank(sel.X_tilde), expected=k)
    v = sel.v if sel.v is not None else dual_state_vectors(sel.Y_tilde, H)
    primal = bcjr_trellis_from_spans(sel.X_tilde, H, sel.S)
    P = pairing_matrices(sel, v)
    gram = []
    for j, (N_j, P_j) in enumerate(zip(primal.N, P)):
        product = matmul(N_j, P_j.T)
        if not rank(N_j) == rank(P_j) == rank(product):
            raise DualityFailed(
                f"Pairing at time {j} is degenerate: ranks {rank(N_j)}, {rank(P_j)}, {rank(product)}",
                section=j,
            )
        gram.append(product)
    try:
        local = local_dual(primal.base, StatePairing.from_spanning(primal.N, P, gram))
    except DegeneratePairing as e:
        raise DualityFailed(str(e), section=e.section)

    n = primal.n
    y = to_ints(sel.Y_tilde)
    width = 2 * H.shape[0] + 1
    transitions = [
        primal.field.matrix(np.hstack([to_ints(P[j]), y[:, j:j + 1], to_ints(P[(j + 1) % n])]), cols=width)
        for j in range(n)
    ]
    dual = build_trellis(primal.field, P, transitions)
    equal = True
    for j, (mine, theirs) in enumerate(zip(dual.sections, local.sections)):
        if not row_space_equal(mine.transitions, theirs.transitions):
            equal = False
            logger.debug("Dual trellis differs from the local dual at section %d", j)
            break
    witness = is_isomorphic(dual, product_trellis(sel.Y_tilde, sel.S_hat).base) if equal else None
    report = DualKvReport(
        K=sel.K,
        primal_scp=complexity(primal.base).scp,
        dual_scp=complexity(dual).scp,
        equals_local_dual=equal,
        witness=witness,
    )
    return primal, dual, report


def is_dual_kv_pair(x: CharacteristicPair, dual: DualSide, K: Sequence[int], H: FieldMatrix) -> bool:
    """True when the dual rows paired with K give the dual KV-trellis."""
    selection = dual_selection(x, dual, K)
    try:
        _, _, report = dual_kv_pair(selection, H)
    except (DualityFailed, RankDeficient):
        return False
    return report.holds


@dataclass
class BcjrSymmetryReport:
    K: Tuple[int, ...]
    displacement_symmetric: bool
    states_symmetric: bool

    @property
    def holds(self) -> bool:
        return self.displacement_symmetric and self.states_symmetric

    def to_dict(self) -> dict:
        return {
            "K": list(self.K),
            "displacement_symmetric": self.displacement_symmetric,
            "states_symmetric": self.states_symmetric,
            "holds": self.holds,
        }


def verify_bcjr_symmetry(sel: DualSelection, strict: bool = False) -> BcjrSymmetryReport:
    """
    Compare T_(X̃,Ỹ,S) with T_(Ỹ,X̃,Ŝ): displacements must be transposes and
    so must every state matrix.

    Raises:
        RankDeficient: rk X̃ < k
        SymmetryFailed: only when ``strict`` and the comparison fails
    """
    k = sel.k
    if rank(sel.X_tilde) != k:
        raise RankDeficient(f"Selected rows {list(sel.K)} have rank {rank(sel.X_tilde)} < {k}",
                            rank=rank(sel.X_tilde), expected=k)
    D = bcjr_displacement(sel.X_tilde, sel.Y_tilde, sel.S)
    D_dual = bcjr_displacement(sel.Y_tilde, sel.X_tilde, sel.S_hat)
    displacement_symmetric = np.array_equal(to_ints(D_dual), to_ints(D).T)
    primal = bcjr_trellis(sel.X_tilde, sel.Y_tilde, D)
    dual = bcjr_trellis(sel.Y_tilde, sel.X_tilde, D_dual)
    states_symmetric = all(
        np.array_equal(to_ints(N_hat), to_ints(N_j).T) for N_j, N_hat in zip(primal.N, dual.N)
    )
    report = BcjrSymmetryReport(sel.K, bool(displacement_symmetric), bool(states_symmetric))
    if strict and not report.holds:
        raise SymmetryFailed(f"BCJR symmetry fails for selection {list(sel.K)}")
    return report
