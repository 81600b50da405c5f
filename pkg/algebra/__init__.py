from .linalg import PrimeField, FieldMatrix, rank, echelon, left_kernel, right_kernel, solve_unique
from .spans import Span, spans_of_vector, is_span_of, parse_span, parse_span_list
from .codes import (
    LinearCode,
    CharacteristicPair,
    code_from_generator,
    code_from_parity_check,
    dual_code,
    characteristic_pair,
    count_characteristic_matrices,
    random_code
)

__all__ = [
    'PrimeField',
    'FieldMatrix',
    'rank',
    'echelon',
    'left_kernel',
    'right_kernel',
    'solve_unique',
    'Span',
    'spans_of_vector',
    'is_span_of',
    'parse_span',
    'parse_span_list',
    'LinearCode',
    'CharacteristicPair',
    'code_from_generator',
    'code_from_parity_check',
    'dual_code',
    'characteristic_pair',
    'count_characteristic_matrices',
    'random_code'
]
