"""
Sectional linear trellises.

Section i stores a basis of the state space V_i (inside F^{ambient_in}) and a
generator matrix of the transition space E_i whose rows are concatenations
[state at i | label | state at i+1].  Explicit vertex graphs are never built
here; see ``trellises.explicit`` for that.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from algebra.codes import LinearCode, code_from_generator
from algebra.linalg import (
    FieldMatrix,
    PrimeField,
    contains_rows,
    echelon,
    hstack,
    is_zero,
    left_kernel,
    matmul,
    rank,
    row_space_equal,
    to_ints,
)
from errors import InvalidTrellis

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TrellisSection:
    state_basis: FieldMatrix
    transitions: FieldMatrix
    ambient_in: int
    ambient_out: int

    def __post_init__(self):
        if self.state_basis.shape[1] != self.ambient_in:
            raise InvalidTrellis(
                f"State basis has {self.state_basis.shape[1]} columns, expected {self.ambient_in}"
            )
        width = self.ambient_in + 1 + self.ambient_out
        if self.transitions.shape[1] != width:
            raise InvalidTrellis(f"Transition rows have {self.transitions.shape[1]} entries, expected {width}")

    @property
    def incoming(self) -> FieldMatrix:
        return self.transitions[:, : self.ambient_in]

    @property
    def labels(self) -> FieldMatrix:
        return self.transitions[:, self.ambient_in: self.ambient_in + 1]

    @property
    def outgoing(self) -> FieldMatrix:
        return self.transitions[:, self.ambient_in + 1:]


@dataclass(frozen=True)
class ComplexityProfile:
    scp: Tuple[int, ...]
    ecp: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"scp": list(self.scp), "ecp": list(self.ecp)}


@dataclass(frozen=True, eq=False)
class LinearTrellis:
    """Linear tail-biting trellis of depth n over a prime field."""

    field: PrimeField
    sections: Tuple[TrellisSection, ...]

    def __post_init__(self):
        n = len(self.sections)
        if n == 0:
            raise InvalidTrellis("A trellis needs at least one section")
        for i, section in enumerate(self.sections):
            following = self.sections[(i + 1) % n]
            if section.ambient_out != following.ambient_in:
                raise InvalidTrellis(
                    f"Section {i} ends in dimension {section.ambient_out}, "
                    f"section {(i + 1) % n} starts in {following.ambient_in}"
                )
            if not contains_rows(section.state_basis, section.incoming):
                raise InvalidTrellis(f"Transitions of section {i} leave V_{i}")
            if not contains_rows(following.state_basis, section.outgoing):
                raise InvalidTrellis(f"Transitions of section {i} leave V_{(i + 1) % n}")

    @property
    def n(self) -> int:
        return len(self.sections)

    @cached_property
    def state_dims(self) -> Tuple[int, ...]:
        return tuple(rank(section.state_basis) for section in self.sections)

    @cached_property
    def edge_dims(self) -> Tuple[int, ...]:
        return tuple(rank(section.transitions) for section in self.sections)

    @property
    def ambient_dims(self) -> Tuple[int, ...]:
        return tuple(section.ambient_in for section in self.sections)

    @cached_property
    def _state_offsets(self) -> List[int]:
        offsets, total = [], 0
        for section in self.sections:
            offsets.append(total)
            total += section.ambient_in
        return offsets + [total]

    def state_columns(self, i: int) -> List[int]:
        start = self._state_offsets[i]
        return list(range(start, start + self.sections[i].ambient_in))

    def label_column(self, i: int) -> int:
        return self._state_offsets[-1] + i

    def section_columns(self, i: int) -> List[int]:
        """Columns of S(T) holding (v_i, c_i, v_{i+1})."""
        return self.state_columns(i) + [self.label_column(i)] + self.state_columns((i + 1) % self.n)

    @cached_property
    def state_label_code(self) -> FieldMatrix:
        """
        Basis of S(T) in coordinates (v_0, …, v_{n-1}, c).

        Unknowns are coefficient vectors for every transition generator; the
        end block of section i must match the start block of section i+1.
        """
        p = self.field.p
        counts = [section.transitions.shape[0] for section in self.sections]
        row_offsets = np.concatenate([[0], np.cumsum(counts)]).astype(int)
        widths = [section.ambient_out for section in self.sections]
        col_offsets = np.concatenate([[0], np.cumsum(widths)]).astype(int)
        matching = np.zeros((row_offsets[-1], col_offsets[-1]), dtype=np.int64)
        states_width = self._state_offsets[-1]
        assembly = np.zeros((row_offsets[-1], states_width + self.n), dtype=np.int64)

        for i, section in enumerate(self.sections):
            j = (i + 1) % self.n
            rows_i = slice(row_offsets[i], row_offsets[i + 1])
            rows_j = slice(row_offsets[j], row_offsets[j + 1])
            cols = slice(col_offsets[i], col_offsets[i + 1])
            matching[rows_i, cols] += to_ints(section.outgoing)
            matching[rows_j, cols] -= to_ints(self.sections[j].incoming)
            assembly[rows_i, self.state_columns(i)] = to_ints(section.incoming)
            assembly[rows_i, self.label_column(i)] = to_ints(section.labels).reshape(-1)

        kernel = left_kernel(self.field.matrix(matching % p, cols=col_offsets[-1]))
        cycles = matmul(kernel, self.field.matrix(assembly % p, cols=states_width + self.n))
        return echelon(cycles)

    def project(self, columns: Sequence[int]) -> FieldMatrix:
        return self.state_label_code[:, list(columns)]

    def __str__(self):
        profile = complexity(self)
        return f"LinearTrellis(n={self.n}, {self.field}, SCP={profile.scp}, ECP={profile.ecp})"


def label_code(t: LinearTrellis) -> FieldMatrix:
    """Basis of S(T), coordinates (v_0, …, v_{n-1}, c)."""
    return t.state_label_code


def label_projection(t: LinearTrellis) -> FieldMatrix:
    """Echelon basis of the edge-label sequences of all cycles."""
    return echelon(t.project([t.label_column(i) for i in range(t.n)]))


def edge_label_code(t: LinearTrellis) -> LinearCode:
    return code_from_generator(t.field.p, label_projection(t))


def complexity(t: LinearTrellis) -> ComplexityProfile:
    return ComplexityProfile(scp=t.state_dims, ecp=t.edge_dims)


def is_proper(t: LinearTrellis) -> bool:
    """Edges leaving a vertex carry distinct labels: (0,0,w) in E_i forces w = 0."""
    for section in t.sections:
        kernel = left_kernel(hstack([section.incoming, section.labels]))
        if not is_zero(matmul(kernel, section.outgoing)):
            return False
    return True


def is_coproper(t: LinearTrellis) -> bool:
    """Edges entering a vertex carry distinct labels: (v,0,0) in E_i forces v = 0."""
    for section in t.sections:
        kernel = left_kernel(hstack([section.labels, section.outgoing]))
        if not is_zero(matmul(kernel, section.incoming)):
            return False
    return True


def is_biproper(t: LinearTrellis) -> bool:
    return is_proper(t) and is_coproper(t)


def is_one_to_one(t: LinearTrellis) -> bool:
    return rank(t.state_label_code) == rank(label_projection(t))


def is_reduced(t: LinearTrellis) -> bool:
    """Every state and every edge lies on some cycle."""
    for i in range(t.n):
        if rank(t.project(t.state_columns(i))) != t.state_dims[i]:
            return False
        if rank(t.project(t.section_columns(i))) != t.edge_dims[i]:
            return False
    return True


def is_conventional(t: LinearTrellis) -> bool:
    return t.state_dims[0] == 0


def reduce(t: LinearTrellis) -> LinearTrellis:
    """Restrict every state and transition space to what cycles actually use."""
    sections = []
    for i, section in enumerate(t.sections):
        sections.append(TrellisSection(
            state_basis=echelon(t.project(t.state_columns(i))),
            transitions=echelon(t.project(t.section_columns(i))),
            ambient_in=section.ambient_in,
            ambient_out=section.ambient_out,
        ))
    reduced = LinearTrellis(t.field, tuple(sections))
    logger.debug("Reduced ECP %s -> %s", t.edge_dims, reduced.edge_dims)
    return reduced


def same_trellis(t1: LinearTrellis, t2: LinearTrellis) -> bool:
    """Literal equality: same ambient dims and equal state and transition spaces."""
    if t1.field != t2.field or t1.n != t2.n or t1.ambient_dims != t2.ambient_dims:
        return False
    return all(
        row_space_equal(s1.state_basis, s2.state_basis)
        and row_space_equal(s1.transitions, s2.transitions)
        for s1, s2 in zip(t1.sections, t2.sections)
    )


def build_trellis(field: PrimeField, state_bases: Sequence[FieldMatrix],
                  transitions: Sequence[FieldMatrix]) -> LinearTrellis:
    """Assemble a trellis from per-time state bases and transition generators."""
    n = len(state_bases)
    sections = tuple(
        TrellisSection(
            state_basis=state_bases[i],
            transitions=transitions[i],
            ambient_in=state_bases[i].shape[1],
            ambient_out=state_bases[(i + 1) % n].shape[1],
        )
        for i in range(n)
    )
    return LinearTrellis(field, sections)
