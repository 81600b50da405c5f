import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Sequence

import config
from errors import TrellisError
from trellises.char_duality import dual_selection
from .base_check import BaseCheck
from .selection_checks import BcjrSymmetryCheck, LocalDualityCheck, ProfileCheck

logger = logging.getLogger(__name__)


class SelectionManager(BaseCheck):
    """Manager that delegates every full-rank dual selection to the selection checks."""

    def __init__(self):
        super().__init__(
            name="SelectionManager",
            role="Dual Selection Coordinator",
            goal="Run the duality, symmetry and profile checks on every full-rank dual selection"
        )

        self.local_duality = LocalDualityCheck()
        self.bcjr_symmetry = BcjrSymmetryCheck()
        self.profile = ProfileCheck()

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Delegate selections to the specialist checks.

        Args:
            input_data: Dictionary containing 'pair', 'dual', 'H', 'selections'
                and optional 'jobs'

        Returns:
            Dictionary with one result per selection, in input order
        """
        selections: Sequence[Sequence[int]] = input_data.get('selections', [])
        jobs = max(1, int(input_data.get('jobs') or config.DEFAULT_JOBS))

        if jobs > 1 and len(selections) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda K: self._run_selection(K, input_data), selections))
        else:
            results = [self._run_selection(K, input_data) for K in selections]

        return {
            'selection_results': results,
            'total_selections': len(results),
            'passed_selections': sum(1 for r in results if r['passed']),
        }

    def _run_selection(self, K: Sequence[int], input_data: Dict[str, Any]) -> Dict[str, Any]:
        logger.debug("  Delegating selection %s", list(K))
        try:
            selection = dual_selection(input_data['pair'], input_data['dual'], K)
        except TrellisError as e:
            return {'K': list(K), **self.failure(e)}

        payload = {
            'pair': input_data['pair'],
            'selection': selection,
            'H': input_data['H'],
        }
        local = self.local_duality.execute(payload)
        symmetry = self.bcjr_symmetry.execute(payload)
        profile = self.profile.execute(payload)

        return {
            'K': list(selection.K),
            'K_hat': list(selection.K_hat),
            'S': [str(span) for span in selection.S],
            'S_hat': [str(span) for span in selection.S_hat],
            'passed': local['passed'] and symmetry['passed'] and profile['passed'],
            'local_duality': local,
            'bcjr_symmetry': symmetry,
            'profile': profile,
        }

    def generate_delegation_report(self, results: List[Dict]) -> str:
        """Generate a report of how the selections fared."""

        report = "SELECTION DELEGATION REPORT\n"
        report += "=" * 60 + "\n\n"

        for check in ('local_duality', 'bcjr_symmetry', 'profile'):
            passed = sum(1 for r in results if r.get(check, {}).get('passed', False))
            report += f"  {check}: {passed}/{len(results)}\n"

        report += "\n"
        passed = sum(1 for r in results if r.get('passed'))
        report += f"Selections passed: {passed}/{len(results)}\n"

        return report
