"""Hypothesis strategies for small codes with full support on both sides."""

from hypothesis import assume
from hypothesis import strategies as st

from algebra.codes import code_from_generator
from algebra.linalg import FieldMatrix, PrimeField
from utils.serialization import parse_matrix


def gf(p: int, rows) -> FieldMatrix:
    """Matrix over GF(p) from nested lists or a row literal like "1001;0110"."""
    return parse_matrix(rows, PrimeField(p))


@st.composite
def matrices(draw, primes=(2, 3, 5), max_rows=4, max_cols=5):
    p = draw(st.sampled_from(primes))
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ))
    return PrimeField(p).matrix(entries)


@st.composite
def codes(draw, max_binary_length=6, max_ternary_length=5):
    """Codes over GF(2) or GF(3) whose code and dual both have full support."""
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(2, max_binary_length if p == 2 else max_ternary_length))
    k = draw(st.integers(1, n - 1))
    rows = draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
        min_size=k, max_size=k,
    ))
    assume(any(any(row) for row in rows))
    code = code_from_generator(p, rows)
    assume(code.k < n and code.has_full_support and code.dual_has_full_support)
    return code


def spans(max_length=8):
    return st.integers(1, max_length).flatmap(
        lambda n: st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.just(n))
    )
