"""Exact linear algebra over prime fields GF(p).

Matrices are 2-D ``galois.FieldArray`` instances.  Every function here accepts
zero-sized operands (0 rows or 0 columns) and returns canonical reduced
echelon bases, so repeated calls on equal inputs give identical results.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence, Tuple

import galois
import numpy as np

import config
from errors import NoSolution, NotUnique, SearchBudgetExceeded, TooLarge

logger = logging.getLogger(__name__)

FieldMatrix = galois.FieldArray


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self):
        if self.p < 2 or not galois.is_prime(self.p):
            raise ValueError(f"Field order {self.p} is not a prime")

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        return galois.GF(self.p)

    def matrix(self, rows, cols: Optional[int] = None) -> FieldMatrix:
        """
        Build a matrix from nested integers, reducing every entry modulo p.

        Args:
            rows: Nested sequence (or array) of integers
            cols: Column count, required to shape an empty matrix

        Returns:
            2-D field array
        """
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(0, cols or 0) if arr.size == 0 else arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError(f"Expected a 2-D matrix, got shape {arr.shape}")
        if arr.size == 0:
            arr = np.zeros((arr.shape[0], cols if cols is not None else arr.shape[1]), dtype=np.int64)
        return self.gf(np.mod(arr, self.p))

    def vector(self, values) -> FieldMatrix:
        arr = np.asarray(values, dtype=np.int64).reshape(-1)
        return self.gf(np.mod(arr, self.p))

    def zeros(self, rows: int, cols: int) -> FieldMatrix:
        return self.gf.Zeros((rows, cols))

    def identity(self, size: int) -> FieldMatrix:
        if size == 0:
            return self.zeros(0, 0)
        return self.gf.Identity(size)

    def scalar(self, value: int) -> FieldMatrix:
        return self.gf(value % self.p)

    def inverse(self, value: int) -> int:
        if value % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.gf(value % self.p) ** -1)

    def __str__(self):
        return f"GF({self.p})"


def field_of(m: FieldMatrix) -> PrimeField:
    """The prime field a field array lives over."""
    return PrimeField(int(type(m).characteristic))


def to_ints(m: FieldMatrix) -> np.ndarray:
    return np.asarray(m.view(np.ndarray), dtype=np.int64)


def to_lists(m: FieldMatrix) -> list:
    return to_ints(m).tolist()


def is_zero(m: FieldMatrix) -> bool:
    return m.size == 0 or not np.any(to_ints(m))


def hstack(blocks: Sequence[FieldMatrix]) -> FieldMatrix:
    """Concatenate matrices side by side; zero-width blocks are allowed."""
    field = field_of(blocks[0])
    return field.gf(np.hstack([to_ints(block) for block in blocks]))


def vstack(blocks: Sequence[FieldMatrix]) -> FieldMatrix:
    """Stack matrices on top of each other; zero-height blocks are allowed."""
    field = field_of(blocks[0])
    return field.gf(np.vstack([to_ints(block) for block in blocks]))


def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.ndim == 1:
        return matmul(a.reshape(1, -1), b).reshape(-1)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"Cannot multiply {a.shape} by {b.shape}")
    if a.shape[0] == 0 or a.shape[1] == 0 or b.shape[1] == 0:
        return field_of(a).zeros(a.shape[0], b.shape[1])
    return a @ b


def _pivot(row: np.ndarray) -> int:
    nonzero = np.flatnonzero(row)
    return int(nonzero[0]) if nonzero.size else -1


def echelon(m: FieldMatrix) -> FieldMatrix:
    """Nonzero rows of the reduced row echelon form of ``m``."""
    if m.shape[0] == 0 or m.shape[1] == 0:
        return field_of(m).zeros(0, m.shape[1])
    reduced = m.row_reduce()
    return reduced[np.any(to_ints(reduced), axis=1)]


def rank(m: FieldMatrix) -> int:
    """Dimension of the row space of ``m``."""
    if m.size == 0:
        return 0
    reduced = m.row_reduce()
    return int(np.count_nonzero(np.any(to_ints(reduced), axis=1)))


def left_kernel(m: FieldMatrix) -> FieldMatrix:
    """
    Basis of {x : x·m = 0} in reduced echelon form.

    Row-reducing (m | I) leaves every row in the form (x·m | x); the rows whose
    left block vanished are exactly a basis of the left kernel.
    """
    field = field_of(m)
    rows, cols = m.shape
    if rows == 0:
        return field.zeros(0, 0)
    if cols == 0:
        return field.identity(rows)
    reduced = hstack([m, field.identity(rows)]).row_reduce()
    head = to_ints(reduced[:, :cols])
    kernel = reduced[~np.any(head, axis=1), cols:]
    return echelon(kernel) if kernel.shape[0] else field.zeros(0, rows)


def right_kernel(m: FieldMatrix) -> FieldMatrix:
    """Basis of {x : m·xᵀ = 0} in reduced echelon form."""
    return left_kernel(m.T)


def row_space_equal(a: FieldMatrix, b: FieldMatrix) -> bool:
    if a.shape[1] != b.shape[1]:
        return False
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(vstack([a, b])) == ra


def contains_rows(space: FieldMatrix, rows: FieldMatrix) -> bool:
    """True when every row of ``rows`` lies in the row space of ``space``."""
    if rows.shape[0] == 0:
        return True
    return rank(vstack([space, rows])) == rank(space)


def solve_unique(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """
    Solve a·vᵀ = b for the unique vector v.

    Args:
        a: Coefficient matrix (m × c)
        b: Right-hand side vector of length m

    Returns:
        The unique solution v of length c

    Raises:
        NoSolution: b lies outside the column space of a
        NotUnique: rank(a) < c
    """
    field = field_of(a)
    rows, cols = a.shape
    column = field.vector(to_ints(b)).reshape(-1, 1)
    if column.shape[0] != rows:
        raise ValueError(f"Right-hand side has length {column.shape[0]}, expected {rows}")
    augmented = hstack([a, column])
    rank_a = rank(a)
    if rank(augmented) > rank_a:
        raise NoSolution("right-hand side is outside the column space")
    if rank_a < cols:
        raise NotUnique(f"coefficient matrix has rank {rank_a} < {cols} columns")
    if cols == 0:
        return field.vector([])
    reduced = augmented.row_reduce()
    return reduced[:cols, cols].copy()


def solve_affine(a: FieldMatrix, b: FieldMatrix) -> Tuple[FieldMatrix, FieldMatrix]:
    """
    Solve a·xᵀ = b in general.

    Returns:
        (particular solution, basis of the solution kernel)

    Raises:
        NoSolution: the system is inconsistent
    """
    field = field_of(a)
    rows, cols = a.shape
    rhs = to_ints(b).reshape(-1)
    if rows == 0:
        return field.vector(np.zeros(cols, dtype=np.int64)), field.identity(cols)
    if cols == 0:
        if np.any(rhs):
            raise NoSolution("inconsistent system with no unknowns")
        return field.vector([]), field.zeros(0, 0)
    reduced = to_ints(hstack([a, field.vector(rhs).reshape(-1, 1)]).row_reduce())
    particular = np.zeros(cols, dtype=np.int64)
    for row in reduced:
        pivot = _pivot(row)
        if pivot == cols:
            raise NoSolution("inconsistent linear system")
        if pivot >= 0:
            particular[pivot] = row[cols]
    return field.vector(particular), right_kernel(a)


def solve_particular(a: FieldMatrix, target: FieldMatrix) -> FieldMatrix:
    """Some coefficient vector x with x·a = target."""
    return solve_affine(a.T, target)[0]


def coefficient_rows(field: PrimeField, dim: int, budget: Optional[int] = None) -> FieldMatrix:
    """All vectors of F^dim as rows, in lexicographic order."""
    budget = budget or config.ENUMERATION_BUDGET
    if field.p ** dim > budget:
        raise TooLarge(f"{field.p}^{dim} vectors exceed the enumeration budget {budget}")
    if dim == 0:
        return field.zeros(1, 0)
    return field.matrix(list(itertools.product(range(field.p), repeat=dim)))


def row_space_elements(m: FieldMatrix, budget: Optional[int] = None) -> FieldMatrix:
    """Every vector of the row space of ``m``, one per row, deterministic order."""
    field = field_of(m)
    basis = echelon(m)
    coefficients = coefficient_rows(field, basis.shape[0], budget)
    if basis.shape[0] == 0:
        return field.zeros(1, m.shape[1])
    return matmul(coefficients, basis)


def general_linear_group(field: PrimeField, size: int, budget: Optional[int] = None) -> Iterator[FieldMatrix]:
    """Invertible size×size matrices in lexicographic order of their entries."""
    budget = budget or config.ISO_SEARCH_BUDGET
    if field.p ** (size * size) > budget:
        raise SearchBudgetExceeded(
            f"GL({size},{field.p}) candidates exceed the search budget {budget}"
        )
    if size == 0:
        yield field.zeros(0, 0)
        return
    for entries in itertools.product(range(field.p), repeat=size * size):
        candidate = field.matrix(np.asarray(entries).reshape(size, size))
        if rank(candidate) == size:
            yield candidate
