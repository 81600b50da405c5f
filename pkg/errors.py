"""Exception hierarchy shared by every tailbiter module."""

from typing import Optional


class TrellisError(Exception):
    """Root of all library errors."""


# Linear algebra

class NoSolution(TrellisError):
    """Right-hand side lies outside the column space."""


class NotUnique(TrellisError):
    """Linear system has more than one solution."""


# Spans

class EmptySpan(TrellisError):
    """Operation needs a nonempty span but got (a,a]."""


class ZeroVector(TrellisError):
    """The zero vector has no span."""


# Codes

class ZeroCode(TrellisError):
    """Generator rows span the zero code."""


class UnsupportedPosition(TrellisError):
    """No codeword is nonzero at the requested position."""


class SupportError(TrellisError):
    """The code or its dual does not have full support."""


class InvalidCharacteristicPair(TrellisError):
    """A matrix/span list pair violates one of the characteristic clauses."""

    def __init__(self, message: str, failed_clauses: Optional[list] = None):
        super().__init__(message)
        self.failed_clauses = failed_clauses or []


class BudgetError(TrellisError):
    """An enumeration or search would exceed its configured budget."""


class TooLarge(BudgetError):
    """Enumeration would exceed the configured budget."""


class SearchBudgetExceeded(BudgetError):
    """Isomorphism search exceeded its dimension or candidate budget."""


# Trellises

class InvalidTrellis(TrellisError):
    """Section shapes or state spaces are inconsistent."""


class InvalidSpan(TrellisError):
    """A span is not a span of the row it annotates."""


class ZeroRow(TrellisError):
    """A generator row is zero."""


class NotOrthogonal(TrellisError):
    """G and H are not orthogonal complements."""


class RankDeficient(TrellisError):
    """Selected rows are linearly dependent."""

    def __init__(self, message: str, rank: int = -1, expected: int = -1):
        super().__init__(message)
        self.rank = rank
        self.expected = expected


class BadSelectionSize(TrellisError):
    """Row selection does not have k elements."""


class DegeneratePairing(TrellisError):
    """A state pairing is ill-defined or degenerate on some time index."""

    def __init__(self, message: str, section: int = -1):
        super().__init__(message)
        self.section = section


# Characteristic duality

class NoUniqueSolution(TrellisError):
    """The dual-cycle system for some m has no unique solution."""

    def __init__(self, message: str, m: int = -1):
        super().__init__(message)
        self.m = m


class VerificationFailed(TrellisError):
    """A proved identity failed to hold on computed data."""

    def __init__(self, message: str, clause: str = "", m: int = -1):
        super().__init__(message)
        self.clause = clause
        self.m = m


class DualityFailed(TrellisError):
    """The paired KV-trellises are not dual to each other."""

    def __init__(self, message: str, section: int = -1):
        super().__init__(message)
        self.section = section


class SymmetryFailed(TrellisError):
    """Displacement matrices of the paired BCJR trellises are not transposes."""


# Input/output

class ParseError(TrellisError):
    """Malformed code, trellis, span or matrix input."""
