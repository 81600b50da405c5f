import pytest
from hypothesis import given

from algebra.codes import CharacteristicPair, characteristic_pair
from algebra.linalg import PrimeField, row_space_equal, to_lists
from errors import DegeneratePairing, NotOrthogonal
from trellises.builders import bcjr_trellis, bcjr_trellis_from_spans, kv_selections, kv_trellis, product_trellis
from trellises.dualization import StatePairing, bcjr_dual, check_subtrellis_dual, local_dual, verify_kv_duality
from trellises.trellis import build_trellis, complexity, is_reduced, label_projection
from utils.serialization import fixture_code
from .strategies import codes, gf


def _local_dual_edge_dims(t):
    """dim (E_j)° = s_j + 1 + s_{j+1} - dim E_j."""
    s, e = t.state_dims, t.edge_dims
    return tuple(s[j] + 1 + s[(j + 1) % t.n] - e[j] for j in range(t.n))


class TestStatePairing:
    def test_degenerate_standard_pairing(self):
        t = build_trellis(PrimeField(2), [gf(2, "11")], [gf(2, "11011")])
        with pytest.raises(DegeneratePairing) as info:
            local_dual(t, StatePairing.standard(t))
        assert info.value.section == 0

    def test_pairing_for_other_trellis(self, bcjr_example, improper_product):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        other = product_trellis(improper_product.G, improper_product.spans).base
        with pytest.raises(DegeneratePairing):
            StatePairing.default(other).validate(t)

    def test_transpose_pairing_is_valid(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans)
        StatePairing.bcjr_transpose(t).validate(t.base)


class TestLocalDual:
    def test_standard_dual_of_product_trellis(self, improper_product):
        t = product_trellis(improper_product.G, improper_product.spans).base
        dual = local_dual(t, StatePairing.standard(t))
        assert complexity(dual).scp == (0, 1, 2)
        assert complexity(dual).ecp == (1, 2, 1)
        assert not is_reduced(dual)
        assert to_lists(label_projection(dual)) == [[1, 1, 1]]

    def test_default_dual_of_bcjr_trellis(self):
        entry = fixture_code("bcjr_localdual")
        t = bcjr_trellis_from_spans(entry.G, entry.H, entry.spans).base
        assert complexity(local_dual(t)).ecp == (2, 1, 2, 3, 3, 2)

    def test_edge_dimension_formula(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert local_dual(t).edge_dims == _local_dual_edge_dims(t)

    @given(codes())
    def test_local_dual_represents_dual_code(self, code):
        pair = characteristic_pair(code)
        t = kv_trellis(pair, code.H, kv_selections(pair)[0]).base
        dual = local_dual(t)
        assert row_space_equal(label_projection(dual), code.H)
        assert dual.edge_dims == _local_dual_edge_dims(t)


class TestBcjrDual:
    def test_bcjr_dual_represents_dual_code(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans)
        dual = bcjr_dual(t)
        assert to_lists(dual.D) == to_lists(t.D.T)
        assert row_space_equal(label_projection(dual.base), bcjr_example.code.H)

    def test_requires_complementary_codes(self):
        t = bcjr_trellis(gf(2, "1001"), gf(2, "1001;0110"), gf(2, "00"))
        with pytest.raises(NotOrthogonal):
            bcjr_dual(t)

    def test_strict_subtrellis(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans)
        report = check_subtrellis_dual(t)
        assert report.holds
        assert report.gaps == [0, 0, 0, 0, 1]
        assert not report.coincide
        assert report.to_dict()["local_ecp"] == [2, 1, 2, 2, 3]

    def test_coincidence_without_kv(self):
        entry = fixture_code("bcjr_localdual")
        report = check_subtrellis_dual(bcjr_trellis_from_spans(entry.G, entry.H, entry.spans))
        assert report.coincide


class TestKvDuality:
    def test_every_selection_of_self_dual_code(self, selfdual):
        pair = CharacteristicPair(selfdual.G, tuple(selfdual.spans))
        for rows in kv_selections(pair):
            report = verify_kv_duality(pair, selfdual.H, rows)
            assert report.holds, report.to_dict()
            assert report.isomorphic and report.ecp_equal

    @given(codes())
    def test_random_kv_trellises(self, code):
        pair = characteristic_pair(code)
        report = verify_kv_duality(pair, code.H, kv_selections(pair)[-1])
        assert report.holds
        assert report.subtrellis.coincide
