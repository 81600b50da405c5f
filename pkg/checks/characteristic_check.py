from typing import Any, Dict

import config
from algebra.codes import characteristic_pair, characteristic_spans, dual_code, greedy_spans_by_end
from errors import TrellisError
from .base_check import BaseCheck


class CharacteristicPairCheck(BaseCheck):
    """Builds the characteristic pair of a code and checks its defining clauses."""

    def __init__(self):
        super().__init__(
            name="CharacteristicPairCheck",
            role="Characteristic Pair Builder",
            goal="Find the characteristic spans and generators of the code and confirm every clause holds"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Build and validate (X, T).

        Args:
            input_data: Dictionary containing 'code' and optional 'tie_break'

        Returns:
            Dictionary with the live 'pair', per-clause flags and the span checks
        """
        code = input_data['code']
        tie_break = input_data.get('tie_break') or config.DEFAULT_TIE_BREAK

        try:
            pair = characteristic_pair(code, tie_break)
            dual_spans = set(characteristic_spans(dual_code(code)))
            by_end = set(greedy_spans_by_end(code))
        except TrellisError as e:
            return self.failure(e, pair=None, blocking=True)

        clauses = pair.clause_report(code)
        reversed_spans = dual_spans == {span.reverse() for span in pair.spans}
        greedy_agrees = by_end == set(pair.spans)

        return {
            'passed': all(clauses.values()) and reversed_spans and greedy_agrees,
            'pair': pair,
            'tie_break': tie_break,
            'clauses': clauses,
            'reversed_spans': reversed_spans,
            'greedy_by_end_agrees': greedy_agrees,
            'blocking': not all(clauses.values()),
            'summary': pair.to_dict(),
        }
