from .trellis import LinearTrellis, TrellisSection, ComplexityProfile, complexity, label_code, edge_label_code
from .isomorphism import is_isomorphic, IsomorphismWitness
from .builders import (
    ProductTrellis,
    BcjrTrellis,
    elementary_trellis,
    product_trellis,
    bcjr_displacement,
    bcjr_trellis,
    bcjr_trellis_from_spans,
    kv_trellis,
    shift_trellis
)
from .dualization import StatePairing, local_dual, bcjr_dual, check_subtrellis_dual, verify_kv_duality
from .char_duality import (
    DualCharResult,
    DualSelection,
    dual_characteristic_pair,
    dual_selection,
    verify_rank_equivalence,
    dual_kv_pair,
    verify_bcjr_symmetry
)

__all__ = [
    'LinearTrellis',
    'TrellisSection',
    'ComplexityProfile',
    'complexity',
    'label_code',
    'edge_label_code',
    'is_isomorphic',
    'IsomorphismWitness',
    'ProductTrellis',
    'BcjrTrellis',
    'elementary_trellis',
    'product_trellis',
    'bcjr_displacement',
    'bcjr_trellis',
    'bcjr_trellis_from_spans',
    'kv_trellis',
    'shift_trellis',
    'StatePairing',
    'local_dual',
    'bcjr_dual',
    'check_subtrellis_dual',
    'verify_kv_duality',
    'DualCharResult',
    'DualSelection',
    'dual_characteristic_pair',
    'dual_selection',
    'verify_rank_equivalence',
    'dual_kv_pair',
    'verify_bcjr_symmetry'
]
