import pytest
from hypothesis import given

from algebra.codes import characteristic_pair
from algebra.linalg import PrimeField, row_space_equal, to_lists
from algebra.spans import Span
from errors import InvalidTrellis
from trellises.builders import bcjr_trellis_from_spans, product_trellis
from trellises.dualization import StatePairing, local_dual
from trellises.trellis import (
    LinearTrellis,
    TrellisSection,
    build_trellis,
    complexity,
    edge_label_code,
    is_biproper,
    is_conventional,
    is_coproper,
    is_one_to_one,
    is_proper,
    is_reduced,
    label_code,
    label_projection,
    reduce,
    same_trellis,
)
from .strategies import codes, gf

GF2 = PrimeField(2)


class TestStructure:
    def test_section_width_mismatch(self):
        with pytest.raises(InvalidTrellis):
            TrellisSection(GF2.zeros(0, 1), GF2.zeros(0, 2), ambient_in=1, ambient_out=1)

    def test_no_sections(self):
        with pytest.raises(InvalidTrellis):
            LinearTrellis(GF2, ())

    def test_transitions_must_stay_in_state_spaces(self):
        with pytest.raises(InvalidTrellis):
            build_trellis(GF2, [GF2.zeros(0, 1)], [gf(2, "100")])

    def test_column_layout(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert t.state_columns(1) == [2, 3]
        assert t.label_column(0) == 10
        assert t.section_columns(4) == [8, 9, 14, 0, 1]
        assert label_code(t).shape[1] == 15


class TestProfiles:
    def test_improper_product_trellis(self, improper_product):
        t = product_trellis(improper_product.G, improper_product.spans).base
        profile = complexity(t)
        assert profile.scp == (0, 1, 2)
        assert profile.ecp == (1, 2, 2)
        assert is_conventional(t)
        assert profile.to_dict() == {"scp": [0, 1, 2], "ecp": [1, 2, 2]}

    def test_bcjr_example_profile(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert complexity(t).scp == (2, 1, 1, 2, 2)
        assert complexity(t).ecp == (2, 2, 2, 3, 2)
        assert not is_conventional(t)

    def test_label_code_of_bcjr_trellis(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert row_space_equal(label_projection(t), bcjr_example.code.G)
        assert is_reduced(t)

    @given(codes())
    def test_bcjr_trellis_represents_code(self, code):
        pair = characteristic_pair(code)
        t = bcjr_trellis_from_spans(pair.X, code.H, pair.spans).base
        assert row_space_equal(edge_label_code(t).G, code.G)
        assert is_reduced(t)


class TestProperness:
    def test_merging_edges_at_time_zero(self, improper_product):
        # two edges labelled 1 enter the single vertex at time 0
        t = product_trellis(improper_product.G, improper_product.spans).base
        assert is_proper(t)
        assert not is_coproper(t)
        assert not is_biproper(t)

    def test_elementary_trellis_is_biproper(self):
        t = product_trellis(gf(2, "101"), [Span(2, 0, 3)]).base
        assert is_biproper(t)
        assert is_one_to_one(t)


class TestReduce:
    def test_reduce_unreduced_local_dual(self, improper_product):
        t = product_trellis(improper_product.G, improper_product.spans).base
        dual = local_dual(t, StatePairing.standard(t))
        assert not is_reduced(dual)
        reduced = reduce(dual)
        assert is_reduced(reduced)
        assert to_lists(label_projection(reduced)) == [[1, 1, 1]]
        assert not same_trellis(dual, reduced)

    def test_same_trellis(self, bcjr_example):
        t1 = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        t2 = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert same_trellis(t1, t2)
        assert same_trellis(reduce(t1), t1)
