import pytest
from hypothesis import given

from algebra.codes import CharacteristicPair, characteristic_pair, dual_code
from algebra.linalg import rank, to_lists
from algebra.spans import Span, parse_span_list
from errors import BadSelectionSize, NotOrthogonal, SymmetryFailed
from trellises.builders import kv_selections
from trellises.char_duality import (
    check_dual_cycle,
    dual_characteristic_pair,
    dual_cycle_matrix,
    dual_kv_pair,
    dual_selection,
    is_dual_kv_pair,
    verify_bcjr_symmetry,
    verify_rank_equivalence,
)
from trellises.trellis import complexity
from utils.serialization import parse_matrix
from .strategies import codes, gf

FIXTURE_SELECTIONS = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]


@pytest.fixture
def fixture_pair(selfdual):
    return CharacteristicPair(selfdual.G, tuple(selfdual.spans))


@pytest.fixture
def construction(selfdual, fixture_pair):
    return dual_characteristic_pair(fixture_pair, selfdual.H)


class TestConstruction:
    def test_dual_matrix(self, construction):
        assert to_lists(construction.Y) == [[1, 0, 0, 1], [0, 1, 1, 0], [1, 1, 1, 1], [1, 0, 0, 1]]
        assert to_lists(construction.v) == [[1, 1], [0, 1], [1, 0], [1, 1]]
        assert [str(span) for span in construction.hat_spans] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]
        assert construction.input_order == (0, 1, 2, 3)

    def test_to_dict(self, construction):
        data = construction.to_dict()
        assert set(data) == {"Y", "spans", "v", "primal_order"}
        assert data["primal_order"] == [0, 1, 2, 3]

    def test_dual_cycles(self, construction):
        cycles = dual_cycle_matrix(construction)
        assert to_lists(cycles)[1] == [0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0]
        assert all(check_dual_cycle(construction, m) for m in range(4))

    def test_lex_pair_gives_same_spans(self, selfdual, selfdual_pair):
        result = dual_characteristic_pair(selfdual_pair, selfdual.H)
        assert [str(span) for span in result.hat_spans] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]

    def test_input_order_for_ternary_code(self, ternary):
        pair = CharacteristicPair(ternary.G, tuple(ternary.spans))
        reordered = dual_characteristic_pair(pair, ternary.H).y_in_input_order()
        assert to_lists(reordered.X) == to_lists(gf(3, "1112;1100;0021;0012"))
        assert list(reordered.spans) == parse_span_list("(1,0],(0,1],(3,2],(2,3]", 4)

    def test_parity_checks_need_full_row_rank(self, fixture_pair):
        with pytest.raises(NotOrthogonal):
            dual_characteristic_pair(fixture_pair, gf(2, "1111;0110;1001"))

    @given(codes())
    def test_dual_spans_reverse_primal_spans(self, code):
        pair = characteristic_pair(code)
        result = dual_characteristic_pair(pair, code.H)
        assert set(result.hat_spans) == {span.reverse() for span in pair.spans}
        assert all(result.pair.clause_report(dual_code(code)).values())
        assert all(int(result.Y[m][m]) == 1 for m in range(code.n))


class TestDualSelection:
    def test_selection_of_last_two_rows(self, fixture_pair, construction):
        selection = dual_selection(fixture_pair, construction, [2, 3])
        assert selection.K_hat == (0, 1)
        assert selection.S_hat == (Span(0, 3, 4), Span(1, 2, 4))
        assert to_lists(selection.v) == [[1, 1], [0, 1]]
        assert selection.to_dict()["S"] == ["(1,2]", "(0,3]"]

    def test_wrong_size(self, fixture_pair, construction):
        with pytest.raises(BadSelectionSize):
            dual_selection(fixture_pair, construction, [0])


class TestRankEquivalence:
    def test_constructed_dual(self, fixture_pair, construction):
        report = verify_rank_equivalence(fixture_pair, construction)
        assert report.holds
        assert len(report.rows) == 6
        assert report.full_rank_selections == FIXTURE_SELECTIONS

    def test_self_pair_of_printed_matrix_fails(self, selfdual, fixture_pair):
        report = verify_rank_equivalence(fixture_pair, fixture_pair, selfdual.H)
        assert not report.holds
        assert [0, 3] in [row["K"] for row in report.violations]

    def test_self_pair_of_lex_matrix(self, selfdual, selfdual_pair):
        report = verify_rank_equivalence(selfdual_pair, selfdual_pair, selfdual.H)
        assert report.holds
        assert report.full_rank_selections == [(0, 1), (0, 2), (1, 3), (2, 3)]

    @given(codes())
    def test_random_codes(self, code):
        pair = characteristic_pair(code)
        report = verify_rank_equivalence(pair, dual_characteristic_pair(pair, code.H))
        assert report.holds
        assert report.full_rank_selections == kv_selections(pair)


class TestDualKvPair:
    @pytest.mark.parametrize("K", FIXTURE_SELECTIONS)
    def test_fixture_selections(self, selfdual, fixture_pair, construction, K):
        selection = dual_selection(fixture_pair, construction, K)
        primal, dual, report = dual_kv_pair(selection, selfdual.H)
        assert report.holds
        assert complexity(primal.base).scp == complexity(dual).scp
        assert verify_bcjr_symmetry(selection, strict=True).holds

    def test_ternary_controls(self, ternary):
        pair = CharacteristicPair(ternary.G, tuple(ternary.spans))
        spans = tuple(parse_span_list("(1,0],(0,1],(3,2],(2,3]", 4))
        good = CharacteristicPair(parse_matrix("1112;1100;0021;0012", ternary.field), spans)
        bad = CharacteristicPair(parse_matrix("1121;1100;0021;0012", ternary.field), spans)
        assert is_dual_kv_pair(pair, good, [2, 3], ternary.H)
        assert not is_dual_kv_pair(pair, bad, [2, 3], ternary.H)

    def test_ternary_bcjr_symmetry_controls(self, ternary):
        pair = CharacteristicPair(ternary.G, tuple(ternary.spans))
        spans = tuple(parse_span_list("(1,0],(0,1],(3,2],(2,3]", 4))
        good = CharacteristicPair(parse_matrix("1112;1100;0021;0012", ternary.field), spans)
        bad = CharacteristicPair(parse_matrix("1121;1100;0021;0012", ternary.field), spans)

        selections = verify_rank_equivalence(pair, good, ternary.H).full_rank_selections
        assert len(selections) == 5
        for K in selections:
            assert verify_bcjr_symmetry(dual_selection(pair, good, K), strict=True).holds

        failing = []
        for K in verify_rank_equivalence(pair, bad, ternary.H).full_rank_selections:
            if not verify_bcjr_symmetry(dual_selection(pair, bad, K)).holds:
                failing.append(K)
        assert failing == [(1, 3), (2, 3)]
        with pytest.raises(SymmetryFailed):
            verify_bcjr_symmetry(dual_selection(pair, bad, (2, 3)), strict=True)

    @given(codes())
    def test_random_selections(self, code):
        pair = characteristic_pair(code)
        result = dual_characteristic_pair(pair, code.H)
        for K in kv_selections(pair)[:2]:
            selection = dual_selection(pair, result, K)
            assert rank(selection.Y_tilde) == code.n - code.k
            _, _, report = dual_kv_pair(selection, code.H)
            assert report.holds
            assert verify_bcjr_symmetry(selection).holds
