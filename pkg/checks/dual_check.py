from typing import Any, Dict

from errors import TrellisError, VerificationFailed
from trellises.char_duality import check_dual_cycle, dual_characteristic_pair
from .base_check import BaseCheck


class DualConstructionCheck(BaseCheck):
    """Constructs the dual characteristic matrix and re-checks every dual cycle."""

    def __init__(self):
        super().__init__(
            name="DualConstructionCheck",
            role="Dual Characteristic Matrix Builder",
            goal="Solve for the dual state vectors and verify each dual codeword closes a cycle"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Run the dual construction.

        Args:
            input_data: Dictionary containing 'pair' and the parity-check matrix 'H'

        Returns:
            Dictionary with the live 'dual' result and per-row cycle flags
        """
        pair = input_data['pair']
        H = input_data['H']

        try:
            result = dual_characteristic_pair(pair, H)
        except VerificationFailed as e:
            return self.failure(e, dual=None, blocking=True, clause=e.clause, m=e.m)
        except TrellisError as e:
            return self.failure(e, dual=None, blocking=True)

        cycles = [check_dual_cycle(result, m) for m in range(result.n)]
        return {
            'passed': all(cycles),
            'dual': result,
            'dual_cycles': cycles,
            'blocking': False,
            'summary': result.to_dict(),
        }
