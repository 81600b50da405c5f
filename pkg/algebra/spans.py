"""Circular half-open intervals (a,b] on the time axis Z_n."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from errors import EmptySpan, ParseError, ZeroVector

_SPAN_PATTERN = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\]")


@dataclass(frozen=True, order=True)
class Span:
    """
    The interval (a,b] = [a,b] minus {a}, read with wraparound when a > b.

    (a,a] is the empty interval.  Spans carry n so mixing time axes fails fast.
    """

    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Time axis length must be positive, got {self.n}")
        if not (0 <= self.a < self.n and 0 <= self.b < self.n):
            raise ValueError(f"Span ({self.a},{self.b}] does not fit a time axis of length {self.n}")

    def _check_index(self, j: int):
        if not 0 <= j < self.n:
            raise ValueError(f"Index {j} outside time axis of length {self.n}")

    def contains(self, j: int) -> bool:
        """True iff j lies in (a,b]."""
        self._check_index(j)
        return 0 < (j - self.a) % self.n <= self.length

    def closed_contains(self, j: int) -> bool:
        """True iff j lies in [a,b]."""
        self._check_index(j)
        return j == self.a or self.contains(j)

    @property
    def length(self) -> int:
        return (self.b - self.a) % self.n

    @property
    def is_empty(self) -> bool:
        return self.a == self.b

    @property
    def is_conventional(self) -> bool:
        return self.a <= self.b

    def indices(self) -> List[int]:
        return [(self.a + t) % self.n for t in range(1, self.length + 1)]

    def closed_indices(self) -> List[int]:
        return [self.a] + self.indices()

    def complement(self) -> "Span":
        if self.is_empty:
            raise EmptySpan(f"Complement of the empty span {self} is undefined")
        return Span(self.b, self.a, self.n)

    def reverse(self) -> "Span":
        return Span(self.b, self.a, self.n)

    def shift(self, steps: int) -> "Span":
        """The span seen after rotating coordinates left by ``steps``."""
        return Span((self.a - steps) % self.n, (self.b - steps) % self.n, self.n)

    def to_text(self) -> str:
        return f"({self.a},{self.b}]/{self.n}"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "Span":
        try:
            return cls(int(data["a"]), int(data["b"]), int(data["n"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Invalid span encoding {data!r}: {e}")

    def __str__(self):
        return f"({self.a},{self.b}]"


def contains(s: Span, j: int) -> bool:
    return s.contains(j)


def complement(s: Span) -> Span:
    return s.complement()


def reverse(s: Span) -> Span:
    return s.reverse()


def span_length(s: Span) -> int:
    return s.length


def _support(c: Sequence[int]) -> List[int]:
    values = np.asarray(c.view(np.ndarray) if hasattr(c, "view") else c, dtype=np.int64).reshape(-1)
    return [int(j) for j in np.flatnonzero(values)]


def spans_of_vector(c) -> List[Span]:
    """
    Every span of a nonzero vector, sorted by (a,b).

    Raises:
        ZeroVector: c is zero
    """
    n = len(c)
    support = _support(c)
    if not support:
        raise ZeroVector("The zero vector has no span")
    spans = []
    for a in support:
        for b in support:
            span = Span(a, b, n)
            if all(span.closed_contains(j) for j in support):
                spans.append(span)
    return sorted(spans)


def is_span_of(c, s: Span) -> bool:
    """True iff ``s`` is a span of the nonzero vector ``c``."""
    support = _support(c)
    if not support or s.n != len(c):
        return False
    if s.a not in support or s.b not in support:
        return False
    return all(s.closed_contains(j) for j in support)


def parse_span(text: str, n: int = None) -> Span:
    """Parse "(a,b]" or "(a,b]/n"."""
    text = text.strip()
    if "/" in text:
        text, length = text.rsplit("/", 1)
        try:
            n = int(length)
        except ValueError:
            raise ParseError(f"Invalid time axis length in span {text!r}")
    match = _SPAN_PATTERN.fullmatch(text.strip())
    if match is None or n is None:
        raise ParseError(f"Cannot parse span {text!r}")
    try:
        return Span(int(match.group(1)), int(match.group(2)), n)
    except ValueError as e:
        raise ParseError(str(e))


def parse_span_list(text: str, n: int) -> List[Span]:
    """Parse a comma separated list such as "(1,3],(3,0],(2,1]"."""
    found = _SPAN_PATTERN.findall(text)
    leftover = _SPAN_PATTERN.sub("", text).replace(",", "").strip()
    if not found or leftover:
        raise ParseError(f"Cannot parse span list {text!r}")
    try:
        return [Span(int(a), int(b), n) for a, b in found]
    except ValueError as e:
        raise ParseError(str(e))


def format_span_list(spans: Iterable[Span]) -> str:
    return ",".join(str(span) for span in spans)
