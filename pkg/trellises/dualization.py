"""
Local and BCJR dualization of linear trellises.

The local dual T° keeps the time axis and replaces each E_j by

    (E_j)° = {(v̂, b, ŵ) : <v, v̂> + a·b - <w, ŵ> = 0 for all (v, a, w) in E_j}

for fixed non-degenerate pairings V_j × V̂_j -> F.  A pairing at time j is
described by three matrices: rows of A_j span V_j, rows of Â_j span V̂_j and
<αA_j, βÂ_j> = α Γ_j βᵀ.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra.codes import CharacteristicPair
from algebra.linalg import (
    FieldMatrix,
    contains_rows,
    echelon,
    hstack,
    matmul,
    rank,
    right_kernel,
    row_space_equal,
    solve_particular,
    to_ints,
)
from errors import DegeneratePairing, NotOrthogonal
from trellises.builders import BcjrTrellis, bcjr_trellis, kv_trellis
from trellises.isomorphism import IsomorphismWitness, is_isomorphic
from trellises.trellis import LinearTrellis, build_trellis, complexity

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StatePairing:
    primal: Tuple[FieldMatrix, ...]
    dual: Tuple[FieldMatrix, ...]
    gram: Tuple[FieldMatrix, ...]
    kind: str = "custom"

    @classmethod
    def default(cls, t: LinearTrellis) -> "StatePairing":
        """Echelon basis B_j against coordinates: <αB_j, β> = α·βᵀ."""
        primal, dual, gram = [], [], []
        for section in t.sections:
            basis = echelon(section.state_basis)
            size = basis.shape[0]
            primal.append(basis)
            dual.append(t.field.identity(size))
            gram.append(t.field.identity(size))
        return cls(tuple(primal), tuple(dual), tuple(gram), kind="default")

    @classmethod
    def standard(cls, t: LinearTrellis) -> "StatePairing":
        """The dot product restricted to V_j × V_j."""
        primal, gram = [], []
        for section in t.sections:
            basis = echelon(section.state_basis)
            primal.append(basis)
            gram.append(matmul(basis, basis.T))
        return cls(tuple(primal), tuple(primal), tuple(gram), kind="standard")

    @classmethod
    def bcjr_transpose(cls, t: BcjrTrellis) -> "StatePairing":
        """<αN_j, βN_jᵀ> = α N_j βᵀ; dual states live where the BCJR dual keeps them."""
        return cls(
            tuple(t.N),
            tuple(N_j.T for N_j in t.N),
            tuple(t.N),
            kind="bcjr-transpose",
        )

    @classmethod
    def from_spanning(cls, primal: Sequence[FieldMatrix], dual: Sequence[FieldMatrix],
                      gram: Sequence[FieldMatrix]) -> "StatePairing":
        return cls(tuple(primal), tuple(dual), tuple(gram))

    def validate(self, t: LinearTrellis):
        """
        Raise DegeneratePairing unless every time index carries a well-defined,
        non-degenerate pairing on V_j.
        """
        if len(self.primal) != t.n:
            raise DegeneratePairing(f"Pairing has {len(self.primal)} times, trellis has {t.n}")
        for j, section in enumerate(t.sections):
            A, A_hat, gram = self.primal[j], self.dual[j], self.gram[j]
            if not row_space_equal(A, section.state_basis):
                raise DegeneratePairing(f"Primal rows do not span V_{j}", section=j)
            if gram.shape != (A.shape[0], A_hat.shape[0]):
                raise DegeneratePairing(f"Gram matrix at time {j} has shape {gram.shape}", section=j)
            rank_a, rank_hat = rank(A), rank(A_hat)
            if A.shape[0] and rank(hstack([A, gram])) != rank_a:
                raise DegeneratePairing(f"Pairing at time {j} is not well defined on V_{j}", section=j)
            if A_hat.shape[0] and rank(hstack([A_hat, gram.T])) != rank_hat:
                raise DegeneratePairing(f"Pairing at time {j} is not well defined on the dual states", section=j)
            if not rank(gram) == rank_a == rank_hat:
                raise DegeneratePairing(
                    f"Pairing at time {j} is degenerate: rank {rank(gram)}, dims {rank_a} and {rank_hat}",
                    section=j,
                )


def _block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(block.shape[0] for block in blocks)
    cols = sum(block.shape[1] for block in blocks)
    result = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for block in blocks:
        result[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return result


def local_dual(t: LinearTrellis, pairing: Optional[StatePairing] = None) -> LinearTrellis:
    """
    Local dual T° under ``pairing`` (the echelon-coordinate pairing by default).

    The result is returned as computed, reduced or not.

    Raises:
        DegeneratePairing: the pairing fails at some time index
    """
    pairing = pairing or StatePairing.default(t)
    pairing.validate(t)
    field = t.field
    p = field.p
    n = t.n
    states, transitions = [], []
    for j, section in enumerate(t.sections):
        following = (j + 1) % n
        gram_in, gram_out = to_ints(pairing.gram[j]), to_ints(pairing.gram[following])
        width = gram_in.shape[1] + 1 + gram_out.shape[1]
        constraints = []
        for row in range(section.transitions.shape[0]):
            alpha = to_ints(solve_particular(pairing.primal[j], section.incoming[row]))
            alpha_out = to_ints(solve_particular(pairing.primal[following], section.outgoing[row]))
            label = int(to_ints(section.labels[row])[0])
            constraints.append(np.concatenate([
                alpha @ gram_in,
                [label],
                -(alpha_out @ gram_out),
            ]))
        system = field.matrix(np.array(constraints, dtype=np.int64).reshape(-1, width) % p, cols=width)
        coordinates = right_kernel(system)
        lift = _block_diagonal([
            to_ints(pairing.dual[j]), np.ones((1, 1), dtype=np.int64), to_ints(pairing.dual[following])
        ])
        transitions.append(echelon(matmul(coordinates, field.matrix(lift, cols=lift.shape[1]))))
        states.append(pairing.dual[j])
    dual = build_trellis(field, states, transitions)
    logger.debug("Local dual ECP %s from ECP %s", dual.edge_dims, t.edge_dims)
    return dual


def bcjr_dual(t: BcjrTrellis) -> BcjrTrellis:
    """
    The BCJR dual T_(H,G,Dᵀ).

    Raises:
        NotOrthogonal: im G is not ker Hᵀ
    """
    if rank(t.G) + rank(t.H) != t.n:
        raise NotOrthogonal(
            f"rank G + rank H = {rank(t.G) + rank(t.H)} differs from n = {t.n}"
        )
    return bcjr_trellis(t.H, t.G, t.D.T)


@dataclass
class SubtrellisReport:
    contained: List[bool] = dataclass_field(default_factory=list)
    local_dims: List[int] = dataclass_field(default_factory=list)
    bcjr_dims: List[int] = dataclass_field(default_factory=list)

    @property
    def gaps(self) -> List[int]:
        return [a - b for a, b in zip(self.local_dims, self.bcjr_dims)]

    @property
    def holds(self) -> bool:
        return all(self.contained)

    @property
    def coincide(self) -> bool:
        return self.holds and not any(self.gaps)

    def to_dict(self) -> dict:
        return {
            "contained": self.contained,
            "local_ecp": self.local_dims,
            "bcjr_ecp": self.bcjr_dims,
            "gaps": self.gaps,
            "holds": self.holds,
        }


def check_subtrellis_dual(t: BcjrTrellis) -> SubtrellisReport:
    """Compare the BCJR dual against T° under the transpose pairing, section by section."""
    local = local_dual(t.base, StatePairing.bcjr_transpose(t))
    dual = bcjr_dual(t).base
    report = SubtrellisReport()
    for local_section, dual_section in zip(local.sections, dual.sections):
        report.contained.append(contains_rows(local_section.transitions, dual_section.transitions))
        report.local_dims.append(rank(local_section.transitions))
        report.bcjr_dims.append(rank(dual_section.transitions))
    return report


@dataclass
class KvDualityReport:
    selection: Tuple[int, ...]
    local_ecp: Tuple[int, ...]
    bcjr_ecp: Tuple[int, ...]
    witness: Optional[IsomorphismWitness]
    subtrellis: SubtrellisReport

    @property
    def ecp_equal(self) -> bool:
        return self.local_ecp == self.bcjr_ecp

    @property
    def isomorphic(self) -> bool:
        return self.witness is not None

    @property
    def holds(self) -> bool:
        return self.ecp_equal and self.isomorphic and self.subtrellis.coincide

    def to_dict(self) -> dict:
        return {
            "selection": list(self.selection),
            "local_ecp": list(self.local_ecp),
            "bcjr_ecp": list(self.bcjr_ecp),
            "ecp_equal": self.ecp_equal,
            "isomorphic": self.isomorphic,
            "witness": self.witness.to_dict() if self.witness else None,
            "subtrellis": self.subtrellis.to_dict(),
            "holds": self.holds,
        }


def verify_kv_duality(x: CharacteristicPair, H: FieldMatrix, selection: Sequence[int]) -> KvDualityReport:
    """Build both duals of a KV-trellis and compare them."""
    kv = kv_trellis(x, H, selection)
    local = local_dual(kv.base)
    dual = bcjr_dual(kv)
    witness = is_isomorphic(local, dual.base)
    report = KvDualityReport(
        selection=tuple(sorted(selection)),
        local_ecp=complexity(local).ecp,
        bcjr_ecp=complexity(dual.base).ecp,
        witness=witness,
        subtrellis=check_subtrellis_dual(kv),
    )
    logger.debug("KV duality for rows %s: %s", report.selection, "holds" if report.holds else "fails")
    return report
