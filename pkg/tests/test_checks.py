import pytest

from algebra.codes import LEX_FIRST, NORMALIZED, characteristic_pair, code_from_generator
from checks import (
    CharacteristicPairCheck,
    DualConstructionCheck,
    PropertiesCheck,
    RankEquivalenceCheck,
    SelectionManager,
    VerdictCritic,
    WorkedExamplesCheck,
)
from checks.property_checks import draw_codes
from trellises.char_duality import dual_characteristic_pair
from utils.serialization import list_fixtures

from .strategies import gf


@pytest.fixture
def selfdual_dual(selfdual, selfdual_pair):
    return dual_characteristic_pair(selfdual_pair, selfdual.H)


class TestCharacteristicPairCheck:
    def test_selfdual_passes(self, selfdual):
        result = CharacteristicPairCheck().execute({'code': selfdual.code})
        assert result['passed']
        assert result['tie_break'] == LEX_FIRST
        assert all(result['clauses'].values())
        assert result['reversed_spans'] and result['greedy_by_end_agrees']
        assert not result['blocking']
        assert result['summary']['spans'] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]

    def test_normalized_policy(self, ternary):
        result = CharacteristicPairCheck().execute({'code': ternary.code, 'tie_break': NORMALIZED})
        assert result['passed']
        assert result['tie_break'] == NORMALIZED

    def test_missing_support_blocks(self):
        code = code_from_generator(2, gf(2, "100;010"))
        result = CharacteristicPairCheck().execute({'code': code})
        assert not result['passed']
        assert result['blocking']
        assert result['pair'] is None
        assert result['error_type'] == 'SupportError'


class TestDualConstructionCheck:
    def test_selfdual(self, selfdual, selfdual_pair):
        result = DualConstructionCheck().execute({'pair': selfdual_pair, 'H': selfdual.H})
        assert result['passed']
        assert result['dual_cycles'] == [True] * 4
        assert result['summary']['spans'] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]

    def test_rank_deficient_parity_checks_block(self, selfdual, selfdual_pair):
        H = gf(2, "1111;0110;1001")
        result = DualConstructionCheck().execute({'pair': selfdual_pair, 'H': H})
        assert not result['passed']
        assert result['blocking']
        assert result['dual'] is None
        assert result['error_type'] == 'NotOrthogonal'


class TestRankEquivalenceCheck:
    def test_selfdual_lex_pair(self, selfdual, selfdual_pair, selfdual_dual):
        result = RankEquivalenceCheck().execute({
            'pair': selfdual_pair,
            'dual': selfdual_dual,
            'H': selfdual.H,
            'code': selfdual.code,
        })
        assert result['passed']
        assert result['full_rank_selections'] == [[0, 1], [0, 2], [1, 3], [2, 3]]
        assert result['self_pair_control'] == {'holds': True, 'violations': []}

    def test_no_control_without_code(self, selfdual, selfdual_pair, selfdual_dual):
        result = RankEquivalenceCheck().execute({'pair': selfdual_pair, 'dual': selfdual_dual, 'H': selfdual.H})
        assert 'self_pair_control' not in result


class TestSelectionManager:
    def test_selections_pass_in_order(self, selfdual, selfdual_pair, selfdual_dual):
        payload = {
            'pair': selfdual_pair,
            'dual': selfdual_dual,
            'H': selfdual.H,
            'selections': [[2, 3], [0, 1]],
        }
        result = SelectionManager().execute(payload)
        assert result['total_selections'] == 2
        assert result['passed_selections'] == 2
        assert [r['K'] for r in result['selection_results']] == [[2, 3], [0, 1]]
        first = result['selection_results'][0]
        assert first['local_duality']['holds']
        assert first['bcjr_symmetry']['passed']
        assert first['profile']['scp_equal']

    def test_threads_match_serial(self, selfdual, selfdual_pair, selfdual_dual):
        payload = {
            'pair': selfdual_pair,
            'dual': selfdual_dual,
            'H': selfdual.H,
            'selections': [[0, 1], [0, 2], [1, 3], [2, 3]],
        }
        serial = SelectionManager().execute(dict(payload, jobs=1))
        threaded = SelectionManager().execute(dict(payload, jobs=3))
        assert [r['K'] for r in threaded['selection_results']] == [r['K'] for r in serial['selection_results']]
        assert [r['passed'] for r in threaded['selection_results']] == [True] * 4

    def test_bad_selection_is_reported(self, selfdual, selfdual_pair, selfdual_dual):
        result = SelectionManager().execute({
            'pair': selfdual_pair,
            'dual': selfdual_dual,
            'H': selfdual.H,
            'selections': [[0, 0]],
        })
        entry = result['selection_results'][0]
        assert entry['K'] == [0, 0]
        assert not entry['passed']
        assert entry['error_type'] == 'BadSelectionSize'

    def test_delegation_report(self):
        results = [
            {'passed': True, 'local_duality': {'passed': True}, 'bcjr_symmetry': {'passed': True},
             'profile': {'passed': True}},
            {'passed': False, 'local_duality': {'passed': True}, 'bcjr_symmetry': {'passed': False},
             'profile': {'passed': True}},
        ]
        report = SelectionManager().generate_delegation_report(results)
        assert "bcjr_symmetry: 1/2" in report
        assert "Selections passed: 1/2" in report


class TestVerdictCritic:
    STAGES = {
        'characteristic': {'passed': True, 'blocking': False},
        'dual_construction': {'passed': True, 'blocking': False},
        'rank_equivalence': {'passed': True},
    }

    def test_all_passed(self):
        verdict = VerdictCritic().execute(dict(self.STAGES, selection_results=[{'K': [0, 1], 'passed': True}]))
        assert verdict['passed']
        assert verdict['findings'] == []
        assert verdict['approval_rate'] == 100

    def test_missing_stage_blocks(self):
        stages = dict(self.STAGES, dual_construction={})
        verdict = VerdictCritic().execute(stages)
        assert not verdict['passed']
        assert verdict['blocking']
        assert "dual_construction: not run" in verdict['findings']

    def test_stage_error_is_described(self):
        stages = dict(self.STAGES, characteristic={
            'passed': False, 'blocking': True, 'error': "no support", 'error_type': 'SupportError'
        })
        verdict = VerdictCritic().execute(stages)
        assert "characteristic: SupportError: no support" in verdict['findings']

    def test_failed_clause_is_named(self):
        stages = dict(self.STAGES, characteristic={
            'passed': False, 'clauses': {'spans_valid': False, 'full_rank': True}, 'reversed_spans': True
        })
        verdict = VerdictCritic().execute(dict(stages, selection_results=[{'K': [0, 1], 'passed': True}]))
        assert verdict['findings'] == ["characteristic: failed spans_valid"]

    def test_failed_selection_parts(self):
        selection = {
            'K': [0, 2],
            'passed': False,
            'local_duality': {'passed': True},
            'bcjr_symmetry': {'passed': True},
            'profile': {'passed': False},
        }
        verdict = VerdictCritic().execute(dict(self.STAGES, selection_results=[selection]))
        assert verdict['findings'] == ["selection [0, 2]: profile"]
        assert verdict['rejected'] == 1

    def test_no_selections_is_a_finding(self):
        verdict = VerdictCritic().execute(dict(self.STAGES))
        assert not verdict['passed']
        assert verdict['findings'] == ["selections: no full-rank selection to check"]

    def test_errors_fail_the_verdict(self):
        verdict = VerdictCritic().execute(dict(
            self.STAGES, selection_results=[{'K': [0, 1], 'passed': True}], errors=["Report error"]
        ))
        assert not verdict['passed']

    def test_summary_text(self):
        summary = VerdictCritic().generate_critique_summary(
            {'passed': False, 'approved': 1, 'total_reviewed': 2, 'findings': ["selection [0, 2]: profile"]}
        )
        assert "Verdict: FAIL" in summary
        assert "Approved selections: 1/2" in summary
        assert "  - selection [0, 2]: profile" in summary


class TestWorkedExamplesCheck:
    def test_single_fixture(self):
        result = WorkedExamplesCheck().execute({'fixtures': ['selfdual_bcjr_b']})
        assert result['passed'], result['failed']
        names = {check['name'] for check in result['checks']}
        assert "selfdual_bcjr_b:self_pair_rank_equivalence" in names
        assert "selfdual_bcjr_b:kv" in names

    def test_whole_corpus(self):
        result = WorkedExamplesCheck().execute({'fixtures': None})
        assert result['passed'], result['failed']
        fixtures = {check['name'].split(":")[0] for check in result['checks']}
        assert fixtures == set(list_fixtures())


class TestPropertiesCheck:
    def test_draw_codes_is_deterministic(self):
        first = [(label, code.k) for label, code in draw_codes(7, 4, 6)]
        second = [(label, code.k) for label, code in draw_codes(7, 4, 6)]
        assert first == second
        assert all(code.n <= 6 for _, code in draw_codes(7, 4, 6))

    def test_small_battery(self):
        result = PropertiesCheck().execute({'seed': 3, 'count': 2, 'max_length': 5})
        assert result['passed'], result['failed']
        assert result['seed'] == 3
        assert any(check['name'].endswith(":lex:dual_selections") for check in result['checks'])

    def test_check_code_on_selfdual(self, selfdual):
        results = PropertiesCheck().check_code(selfdual.code)
        assert all(passed for _, passed, _ in results), results
        assert {prop for prop, _, _ in results} >= {'shortest_generators', 'shift_equivariance',
                                                   'lex:kv_trellises', 'normalized:rank_equivalence'}
