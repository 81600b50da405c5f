"""Replays the worked-example corpus in ``fixtures/`` against the library."""

import logging
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from algebra.codes import LEX_FIRST, CharacteristicPair, characteristic_pair, count_characteristic_matrices
from algebra.linalg import FieldMatrix, rank, row_space_equal, to_ints
from algebra.spans import Span, format_span_list, parse_span
from errors import RankDeficient, TrellisError
from trellises.builders import (
    bcjr_displacement,
    bcjr_trellis_from_spans,
    intersection_of_images,
    is_kv_trellis,
    kv_selections,
    kv_trellis,
    product_trellis,
)
from trellises.char_duality import dual_characteristic_pair, dual_cycle_matrix, is_dual_kv_pair, verify_rank_equivalence
from trellises.dualization import StatePairing, check_subtrellis_dual, local_dual
from trellises.explicit import explicit_graph, vertex_counts
from trellises.trellis import LinearTrellis, complexity, is_biproper, is_proper, is_reduced, label_projection
from utils.serialization import CodeInput, code_from_dict, list_fixtures, load_fixture, parse_matrix
from .base_check import BaseCheck

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

PAIRINGS = {
    "default": StatePairing.default,
    "standard": StatePairing.standard,
}


def _same(actual: FieldMatrix, expected: FieldMatrix) -> bool:
    return actual.shape == expected.shape and np.array_equal(to_ints(actual), to_ints(expected))


def _spans(entry: CodeInput, texts: Sequence[str]) -> List[Span]:
    return [parse_span(text, entry.code.n) for text in texts]


def _fixture_pair(entry: CodeInput) -> CharacteristicPair:
    """The pair printed in the fixture when it has n rows, else the lex-first pair."""
    if entry.spans and len(entry.spans) == entry.code.n:
        return CharacteristicPair(entry.G, tuple(entry.spans))
    return characteristic_pair(entry.code, LEX_FIRST)


def _outcome(failures: List[str]) -> Outcome:
    return (not failures, "; ".join(failures))


class WorkedExamplesCheck(BaseCheck):
    """Check that every fixture reproduces its recorded matrices, profiles and verdicts."""

    def __init__(self):
        super().__init__(
            name="WorkedExamplesCheck",
            role="Worked Example Auditor",
            goal="Reproduce every worked example in the fixture corpus exactly"
        )
        self.handlers: Dict[str, Callable[[CodeInput, Any], Outcome]] = {
            'characteristic': self._check_characteristic,
            'normalized_count': self._check_normalized_count,
            'bcjr': self._check_bcjr,
            'product': self._check_product,
            'kv': self._check_kv,
            'dual_construction': self._check_dual_construction,
            'dual_input_order': self._check_dual_input_order,
            'dual_controls': self._check_dual_controls,
            'rank_checks': self._check_ranks,
            'self_pair_rank_equivalence': self._check_self_pair,
        }

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Run the corpus.

        Args:
            input_data: Dictionary with optional 'fixtures' (names, default all)

        Returns:
            Dictionary with one entry per (fixture, expectation) in 'checks'
        """
        names = input_data.get('fixtures') or list_fixtures()
        checks = []
        for name in names:
            checks.extend(self.check_fixture(name))

        failed = [check['name'] for check in checks if not check['passed']]
        return {
            'passed': bool(checks) and not failed,
            'checks': checks,
            'total': len(checks),
            'failed': failed,
        }

    def check_fixture(self, name: str) -> List[Dict[str, Any]]:
        document = load_fixture(name)
        entry = code_from_dict(document['code'])
        expected = document.get('expected', {})
        results = []

        for key, handler in self.handlers.items():
            if key not in expected:
                continue
            try:
                passed, details = handler(entry, expected[key])
            except TrellisError as e:
                passed, details = False, f"{type(e).__name__}: {e}"
            mark = "✓" if passed else "✗"
            logger.info("  %s %s:%s", mark, name, key)
            results.append({'name': f"{name}:{key}", 'passed': passed, 'details': details})

        return results

    def _check_characteristic(self, entry: CodeInput, expected: Dict) -> Outcome:
        pair = characteristic_pair(entry.code, LEX_FIRST)
        failures = []
        if list(pair.spans) != _spans(entry, expected['spans']):
            failures.append(f"spans {format_span_list(pair.spans)}")
        if 'X' in expected and not _same(pair.X, parse_matrix(expected['X'], entry.field)):
            failures.append(f"X {to_ints(pair.X).tolist()}")
        return _outcome(failures)

    def _check_normalized_count(self, entry: CodeInput, expected: int) -> Outcome:
        count = count_characteristic_matrices(entry.code, normalized=True)
        return count == expected, f"count {count}"

    def _check_bcjr(self, entry: CodeInput, expected: Dict) -> Outcome:
        t = bcjr_trellis_from_spans(entry.G, entry.H, entry.spans)
        failures = []
        if 'D' in expected and not _same(t.D, parse_matrix(expected['D'], entry.field)):
            failures.append(f"D {to_ints(t.D).tolist()}")
        for j, text in enumerate(expected.get('N', [])):
            if not _same(t.N[j], parse_matrix(text, entry.field)):
                failures.append(f"N_{j} {to_ints(t.N[j]).tolist()}")
        failures.extend(self._profile_failures(t.base, expected))
        if 'vertex_counts' in expected:
            counts = vertex_counts(explicit_graph(t.base))
            if list(counts) != expected['vertex_counts']:
                failures.append(f"vertex counts {counts}")
        if 'image_intersection' in expected:
            meet = intersection_of_images(t.N)
            if not row_space_equal(meet, parse_matrix(expected['image_intersection'], entry.field)):
                failures.append(f"image intersection {to_ints(meet).tolist()}")
        if 'subtrellis_gaps' in expected:
            report = check_subtrellis_dual(t)
            if not report.holds or report.gaps != expected['subtrellis_gaps']:
                failures.append(f"subtrellis {report.to_dict()}")
        if 'local_dual' in expected:
            failures.extend(self._local_dual_failures(t.base, expected['local_dual'], entry))
        if 'dual_displacement' in expected:
            swapped = bcjr_displacement(entry.H, entry.G, _spans(entry, expected['dual_displacement']))
            if not _same(swapped, t.D.T):
                failures.append(f"dual displacement {to_ints(swapped).tolist()}")
        return _outcome(failures)

    def _check_product(self, entry: CodeInput, expected: Dict) -> Outcome:
        t = product_trellis(entry.G, entry.spans).base
        failures = self._profile_failures(t, expected)
        if 'proper' in expected and is_proper(t) != expected['proper']:
            failures.append(f"proper {is_proper(t)}")
        if 'biproper' in expected and is_biproper(t) != expected['biproper']:
            failures.append(f"biproper {is_biproper(t)}")
        if 'local_dual' in expected:
            failures.extend(self._local_dual_failures(t, expected['local_dual'], entry))
        return _outcome(failures)

    @staticmethod
    def _profile_failures(t: LinearTrellis, expected: Dict, prefix: str = "") -> List[str]:
        profile = complexity(t)
        failures = []
        if 'scp' in expected and list(profile.scp) != expected['scp']:
            failures.append(f"{prefix}SCP {profile.scp}")
        if 'ecp' in expected and list(profile.ecp) != expected['ecp']:
            failures.append(f"{prefix}ECP {profile.ecp}")
        return failures

    def _local_dual_failures(self, t: LinearTrellis, expected: Dict, entry: CodeInput) -> List[str]:
        pairing = PAIRINGS[expected.get('pairing', 'default')](t)
        dual = local_dual(t, pairing)
        failures = self._profile_failures(dual, expected, prefix="local dual ")
        for j, text in enumerate(expected.get('transitions', [])):
            generators = parse_matrix(text, entry.field, cols=dual.sections[j].transitions.shape[1])
            if not row_space_equal(dual.sections[j].transitions, generators):
                failures.append(f"local dual E_{j}")
        if 'reduced' in expected and is_reduced(dual) != expected['reduced']:
            failures.append(f"local dual reduced {is_reduced(dual)}")
        if 'label_code' in expected:
            labels = label_projection(dual)
            if not row_space_equal(labels, parse_matrix(expected['label_code'], entry.field)):
                failures.append(f"local dual labels {to_ints(labels).tolist()}")
        return failures

    def _check_kv(self, entry: CodeInput, expected: Dict) -> Outcome:
        pair = _fixture_pair(entry)
        failures = []
        selections = [list(rows) for rows in kv_selections(pair)]
        if selections != expected['selections']:
            failures.append(f"selections {selections}")
        for rows in selections:
            if not is_kv_trellis(kv_trellis(pair, entry.H, rows)):
                failures.append(f"selection {rows} is not a KV-trellis")
        for rows in expected.get('dependent', []):
            try:
                kv_trellis(pair, entry.H, rows)
                failures.append(f"selection {rows} built")
            except RankDeficient:
                pass
        return _outcome(failures)

    def _check_dual_construction(self, entry: CodeInput, expected: Dict) -> Outcome:
        result = dual_characteristic_pair(_fixture_pair(entry), entry.H)
        failures = []
        if 'Y' in expected and not _same(result.Y, parse_matrix(expected['Y'], entry.field)):
            failures.append(f"Y {to_ints(result.Y).tolist()}")
        if 'spans' in expected and list(result.hat_spans) != _spans(entry, expected['spans']):
            failures.append(f"spans {format_span_list(result.hat_spans)}")
        if 'v' in expected and not _same(result.v, parse_matrix(expected['v'], entry.field)):
            failures.append(f"v {to_ints(result.v).tolist()}")
        if 'cycles' in expected:
            cycles = dual_cycle_matrix(result)
            if not _same(cycles, parse_matrix(expected['cycles'], entry.field)):
                failures.append(f"dual cycles {to_ints(cycles).tolist()}")
        return _outcome(failures)

    def _check_dual_input_order(self, entry: CodeInput, expected: Dict) -> Outcome:
        pair = dual_characteristic_pair(_fixture_pair(entry), entry.H).y_in_input_order()
        failures = []
        if not _same(pair.X, parse_matrix(expected['Y'], entry.field)):
            failures.append(f"Y {to_ints(pair.X).tolist()}")
        if list(pair.spans) != _spans(entry, expected['spans']):
            failures.append(f"spans {format_span_list(pair.spans)}")
        return _outcome(failures)

    def _check_dual_controls(self, entry: CodeInput, expected: List[Dict]) -> Outcome:
        pair = _fixture_pair(entry)
        failures = []
        for control in expected:
            dual = CharacteristicPair(parse_matrix(control['Y'], entry.field), tuple(_spans(entry, control['spans'])))
            verdict = is_dual_kv_pair(pair, dual, control['K'], entry.H)
            if verdict != control['is_dual_kv_pair']:
                failures.append(f"{control['Y']} on {control['K']}: {verdict}")
        return _outcome(failures)

    def _check_ranks(self, entry: CodeInput, expected: List[Dict]) -> Outcome:
        pair = characteristic_pair(entry.code, LEX_FIRST)
        failures = []
        for item in expected:
            rows = pair.rows_with_spans(_spans(entry, item['spans']))
            found = rank(pair.X[rows])
            if found != item['rank']:
                failures.append(f"{', '.join(item['spans'])}: rank {found}")
        return _outcome(failures)

    def _check_self_pair(self, entry: CodeInput, expected: bool) -> Outcome:
        pair = _fixture_pair(entry)
        report = verify_rank_equivalence(pair, pair, entry.H)
        return report.holds == expected, f"violations {[row['K'] for row in report.violations]}"
