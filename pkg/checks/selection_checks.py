from typing import Any, Dict

from errors import TrellisError
from trellises.builders import bcjr_trellis_from_spans, predicted_product_profile, product_trellis
from trellises.char_duality import dual_kv_pair, verify_bcjr_symmetry
from trellises.dualization import verify_kv_duality
from trellises.trellis import complexity
from .base_check import BaseCheck


class LocalDualityCheck(BaseCheck):
    """Checks that the paired KV-trellises are local duals of each other."""

    def __init__(self):
        super().__init__(
            name="LocalDualityCheck",
            role="Local Duality Specialist",
            goal="Show the local dual of the primal KV-trellis is the product trellis of the dual rows"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Compare T° with the dual KV-trellis and with the BCJR dual.

        Args:
            input_data: Dictionary containing 'pair', 'selection' and 'H'

        Returns:
            Dictionary with 'holds' and both reports
        """
        pair = input_data['pair']
        selection = input_data['selection']
        H = input_data['H']

        try:
            _, _, report = dual_kv_pair(selection, H)
            coincidence = verify_kv_duality(pair, H, selection.K)
        except TrellisError as e:
            return self.failure(e, holds=False)

        holds = report.holds and coincidence.holds
        return {
            'passed': holds,
            'holds': holds,
            'dual_kv': report.to_dict(),
            'bcjr_dual': {
                'local_ecp': list(coincidence.local_ecp),
                'bcjr_ecp': list(coincidence.bcjr_ecp),
                'isomorphic': coincidence.isomorphic,
                'subtrellis': coincidence.subtrellis.to_dict(),
                'holds': coincidence.holds,
            },
        }


class BcjrSymmetryCheck(BaseCheck):
    """Checks that the paired BCJR trellises have transposed displacement and state matrices."""

    def __init__(self):
        super().__init__(
            name="BcjrSymmetryCheck",
            role="BCJR Symmetry Specialist",
            goal="Confirm the dual BCJR trellis uses the transposed displacement matrix"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        selection = input_data['selection']

        try:
            report = verify_bcjr_symmetry(selection)
        except TrellisError as e:
            return self.failure(e, holds=False)

        result = report.to_dict()
        result['passed'] = report.holds
        return result


class ProfileCheck(BaseCheck):
    """Checks that the paired KV-trellises share their state complexity profile."""

    def __init__(self):
        super().__init__(
            name="ProfileCheck",
            role="Complexity Profile Specialist",
            goal="Compare the state profiles of the primal and dual KV-trellises"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        selection = input_data['selection']
        H = input_data['H']

        try:
            primal = complexity(bcjr_trellis_from_spans(selection.X_tilde, H, selection.S).base)
            dual = complexity(product_trellis(selection.Y_tilde, selection.S_hat).base)
        except TrellisError as e:
            return self.failure(e, scp_equal=False)

        matches_product = primal == predicted_product_profile(selection.S)
        scp_equal = primal.scp == dual.scp
        return {
            'passed': scp_equal and matches_product,
            'scp_equal': scp_equal,
            'matches_product_profile': matches_product,
            'primal': primal.to_dict(),
            'dual': dual.to_dict(),
        }
