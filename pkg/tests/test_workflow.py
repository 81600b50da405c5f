import json
from pathlib import Path

from algebra.codes import NORMALIZED, code_from_generator
from utils.serialization import dumps
from workflows import KvConjectureWorkflow, kv_conjecture_suite

from .strategies import gf


class TestKvConjectureWorkflow:
    def test_selfdual_verdict(self, selfdual):
        result = kv_conjecture_suite(selfdual.code, H=selfdual.H)

        assert result['verdict']['passed'], result['verdict']['findings']
        assert result['code'] == {'name': "selfdual-4-2", 'p': 2, 'n': 4, 'k': 2}
        assert result['characteristic_pair']['spans'] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]
        assert result['dual_pair']['spans'] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]
        assert [r['K'] for r in result['selection_results']] == [[0, 1], [0, 2], [1, 3], [2, 3]]
        assert result['verdict']['approved'] == 4
        assert result['rank_equivalence']['self_pair_control']['holds']
        assert result['errors'] == []

    def test_summary_is_json_ready(self, selfdual):
        result = kv_conjecture_suite(selfdual.code, jobs=2)
        assert 'pair' not in result['characteristic']
        assert 'dual' not in result['dual_construction']
        assert json.loads(dumps(result))["verdict"]["passed"]

    def test_normalized_tie_break(self, ternary):
        result = kv_conjecture_suite(ternary.code, tie_break=NORMALIZED)
        assert result['tie_break'] == NORMALIZED
        assert result['verdict']['passed'], result['verdict']['findings']

    def test_missing_support_aborts(self):
        code = code_from_generator(2, gf(2, "100;010"), name="short")
        result = KvConjectureWorkflow().run(code)

        assert not result['verdict']['passed']
        assert result['verdict']['blocking']
        assert result['characteristic_pair'] is None
        assert result['dual_pair'] is None
        assert result['selection_results'] == []
        assert result['characteristic']['error_type'] == 'SupportError'
        assert len(result['errors']) == 1
        assert "dual_construction: not run" in result['verdict']['findings']

    def test_reports_are_written(self, selfdual, tmp_path):
        result = kv_conjecture_suite(selfdual.code, report_dir=str(tmp_path))

        text = Path(result['reports']['text'])
        assert text.exists()
        assert "KV CONJECTURE VERIFICATION REPORT" in text.read_text(encoding="utf-8")
        saved = json.loads(Path(result['reports']['json']).read_text(encoding="utf-8"))
        assert saved['verdict']['passed']
