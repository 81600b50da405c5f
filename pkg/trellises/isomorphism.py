"""
Isomorphism search between linear trellises.

An isomorphism is a family of linear bijections L_i: V_i -> V'_i with
(v,a,w) in E_i iff (L_i v, a, L_{i+1} w) in E'_i.  In echelon coordinates
each L_i is an invertible s_i×s_i matrix A_i.  The search fixes A at the
time with the smallest state space by enumerating GL(s, p), then each
following A_{i+1} solves an affine system given A_i, so only the (usually
tiny) solution sets are enumerated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

import config
from algebra.linalg import (
    FieldMatrix,
    PrimeField,
    coefficient_rows,
    echelon,
    general_linear_group,
    rank,
    right_kernel,
    solve_affine,
    solve_unique,
    to_ints,
)
from errors import NoSolution, SearchBudgetExceeded, TooLarge
from trellises.trellis import LinearTrellis, complexity

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class IsomorphismWitness:
    """Coordinate matrices A_i with L_i(γ·B_i) = γ·A_i·B'_i."""

    maps: Tuple[FieldMatrix, ...]
    source_bases: Tuple[FieldMatrix, ...]
    target_bases: Tuple[FieldMatrix, ...]

    def apply(self, i: int, state) -> np.ndarray:
        """Image of an ambient state vector at time i."""
        field = PrimeField(int(type(self.maps[i]).characteristic))
        basis, target = self.source_bases[i], self.target_bases[i]
        if basis.shape[0] == 0:
            return np.zeros(target.shape[1], dtype=np.int64)
        gamma = to_ints(solve_unique(basis.T, field.vector(state)))
        return (gamma @ to_ints(self.maps[i]) @ to_ints(target)) % field.p

    def to_dict(self) -> dict:
        return {"maps": [to_ints(m).tolist() for m in self.maps]}


class _Search:
    """One backtracking run; holds precomputed coordinates and counters."""

    def __init__(self, t1: LinearTrellis, t2: LinearTrellis, budget: int):
        self.t1, self.t2 = t1, t2
        self.field = t1.field
        self.p = t1.field.p
        self.n = t1.n
        self.budget = budget
        self.inspected = 0
        self.bases = [echelon(s.state_basis) for s in t1.sections]
        self.targets = [to_ints(echelon(s.state_basis)) for s in t2.sections]
        self.dims = list(t1.state_dims)
        self.annihilators = [to_ints(right_kernel(s.transitions)) for s in t2.sections]
        self.generators = [self._coordinates(i) for i in range(self.n)]

    def _coordinates(self, i: int):
        """Per generator of E_i: (γ_in, label, γ_out) in echelon coordinates."""
        section = self.t1.sections[i]
        j = (i + 1) % self.n
        rows = []
        for row in range(section.transitions.shape[0]):
            rows.append((
                self._gamma(self.bases[i], section.incoming[row]),
                int(to_ints(section.labels[row])[0]),
                self._gamma(self.bases[j], section.outgoing[row]),
            ))
        return rows

    def _gamma(self, basis: FieldMatrix, vector: FieldMatrix) -> np.ndarray:
        if basis.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return to_ints(solve_unique(basis.T, vector))

    def _image(self, gamma: np.ndarray, A: np.ndarray, time: int) -> np.ndarray:
        target = self.targets[time]
        if gamma.size == 0:
            return np.zeros(target.shape[1], dtype=np.int64)
        return (gamma @ A @ target) % self.p

    def _charge(self, count: int):
        self.inspected += count
        if self.inspected > self.budget:
            raise SearchBudgetExceeded(
                f"Isomorphism search inspected more than {self.budget} candidate maps"
            )

    def section_holds(self, i: int, A_in: np.ndarray, A_out: np.ndarray) -> bool:
        """Every mapped generator of E_i lies in E'_i."""
        j = (i + 1) % self.n
        ann = self.annihilators[i]
        if ann.shape[0] == 0:
            return True
        for gamma_in, label, gamma_out in self.generators[i]:
            image = np.concatenate([
                self._image(gamma_in, A_in, i), [label], self._image(gamma_out, A_out, j)
            ])
            if np.any((ann @ image) % self.p):
                return False
        return True

    def next_candidates(self, i: int, A_in: np.ndarray) -> List[np.ndarray]:
        """Invertible A_{i+1} consistent with section i, given A_i."""
        j = (i + 1) % self.n
        size = self.dims[j]
        ann = self.annihilators[i]
        amb_in = self.t2.sections[i].ambient_in
        target_out = self.targets[j]
        equations, rhs = [], []
        for gamma_in, label, gamma_out in self.generators[i]:
            known = np.concatenate([self._image(gamma_in, A_in, i), [label]])
            for h in ann:
                constant = int(h[: amb_in + 1] @ known)
                weights = (target_out @ h[amb_in + 1:]) % self.p if size else np.zeros(0, dtype=np.int64)
                equations.append(np.outer(gamma_out, weights).reshape(-1) if size else np.zeros(0, dtype=np.int64))
                rhs.append(-constant)
        if size == 0:
            ok = all(value % self.p == 0 for value in rhs)
            return [np.zeros((0, 0), dtype=np.int64)] if ok else []
        if not equations:
            particular = np.zeros(size * size, dtype=np.int64)
            kernel = np.eye(size * size, dtype=np.int64)
        else:
            try:
                x0, kernel_basis = solve_affine(
                    self.field.matrix(np.array(equations) % self.p, cols=size * size),
                    self.field.vector(np.array(rhs) % self.p),
                )
            except NoSolution:
                return []
            particular, kernel = to_ints(x0), to_ints(kernel_basis)
        try:
            combos = to_ints(coefficient_rows(self.field, kernel.shape[0], self.budget))
        except TooLarge as e:
            raise SearchBudgetExceeded(str(e))
        self._charge(combos.shape[0])
        found = []
        for combo in combos:
            flat = (particular + combo @ kernel) % self.p if kernel.shape[0] else particular
            candidate = flat.reshape(size, size)
            if rank(self.field.matrix(candidate)) == size:
                found.append(candidate)
        return found

    def run(self) -> Optional[List[np.ndarray]]:
        start = int(np.argmin(self.dims))
        for A_start in general_linear_group(self.field, self.dims[start], self.budget):
            self._charge(1)
            maps = {start: to_ints(A_start).reshape(self.dims[start], self.dims[start])}
            result = self._extend(start, start, maps)
            if result is not None:
                return [result[i] for i in range(self.n)]
        return None

    def _extend(self, start: int, current: int, maps: dict) -> Optional[dict]:
        following = (current + 1) % self.n
        if following == start:
            return maps if self.section_holds(current, maps[current], maps[start]) else None
        for candidate in self.next_candidates(current, maps[current]):
            trial = dict(maps)
            trial[following] = candidate
            result = self._extend(start, following, trial)
            if result is not None:
                return result
        return None


def is_isomorphic(t1: LinearTrellis, t2: LinearTrellis, max_dim: Optional[int] = None,
                  budget: Optional[int] = None) -> Optional[IsomorphismWitness]:
    """
    Search for a trellis isomorphism t1 -> t2.

    Args:
        t1, t2: Trellises over the same field and time axis
        max_dim: Largest state dimension accepted (config.ISO_MAX_STATE_DIM)
        budget: Candidate-map budget (config.ISO_SEARCH_BUDGET)

    Returns:
        Witness maps, or None when the trellises are not isomorphic

    Raises:
        SearchBudgetExceeded: a state dimension or the candidate count is too large
    """
    max_dim = max_dim if max_dim is not None else config.ISO_MAX_STATE_DIM
    budget = budget or config.ISO_SEARCH_BUDGET
    if t1.field != t2.field or t1.n != t2.n:
        return None
    if complexity(t1) != complexity(t2):
        return None
    if max(t1.state_dims) > max_dim:
        raise SearchBudgetExceeded(
            f"State dimension {max(t1.state_dims)} exceeds the search bound {max_dim}"
        )
    search = _Search(t1, t2, budget)
    maps = search.run()
    logger.debug("Isomorphism search inspected %d candidate maps", search.inspected)
    if maps is None:
        return None
    return IsomorphismWitness(
        maps=tuple(t1.field.matrix(A, cols=A.shape[1]) for A in maps),
        source_bases=tuple(search.bases),
        target_bases=tuple(echelon(s.state_basis) for s in t2.sections),
    )
