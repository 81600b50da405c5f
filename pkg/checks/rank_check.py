import logging
from typing import Any, Dict

from errors import TrellisError
from trellises.char_duality import verify_rank_equivalence
from .base_check import BaseCheck

logger = logging.getLogger(__name__)


class RankEquivalenceCheck(BaseCheck):
    """Compares primal and dual selection ranks over every k-subset of rows."""

    def __init__(self):
        super().__init__(
            name="RankEquivalenceCheck",
            role="Dual Rank Auditor",
            goal="Confirm a primal selection has full rank exactly when its dual selection does"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Check rank equivalence for the constructed dual.

        For self-dual codes the pair (X, X) is also run and recorded as data;
        its outcome does not affect 'passed'.

        Args:
            input_data: Dictionary containing 'pair', 'dual', 'H' and 'code'

        Returns:
            Dictionary with the report and the full-rank selections
        """
        pair = input_data['pair']
        dual = input_data['dual']
        H = input_data['H']
        code = input_data.get('code')

        try:
            report = verify_rank_equivalence(pair, dual, H)
        except TrellisError as e:
            return self.failure(e, full_rank_selections=[])

        result = {
            'passed': report.holds,
            'report': report.to_dict(),
            'full_rank_selections': [list(K) for K in report.full_rank_selections],
        }

        if code is not None and code.is_self_dual():
            try:
                control = verify_rank_equivalence(pair, pair, H)
                result['self_pair_control'] = {
                    'holds': control.holds,
                    'violations': [row['K'] for row in control.violations],
                }
            except TrellisError as e:
                result['self_pair_control'] = {'holds': False, 'error': str(e)}
            logger.info("Self-pair rank equivalence: %s", result['self_pair_control'].get('holds'))

        return result
