"""Property battery over seeded random codes."""

import logging
from typing import Any, Dict, List, Tuple

import numpy as np

import config
from algebra.codes import (
    LEX_FIRST,
    NORMALIZED,
    LinearCode,
    characteristic_spans,
    cyclic_shift,
    random_code,
    shortest_generator_violations,
)
from algebra.linalg import rank
from errors import TrellisError
from trellises.builders import end_row_failures, intersection_of_images, kv_selections, kv_trellis
from trellises.explicit import cycle_label_set, label_set_of_code
from trellises.trellis import label_projection
from .base_check import BaseCheck
from .characteristic_check import CharacteristicPairCheck
from .dual_check import DualConstructionCheck
from .rank_check import RankEquivalenceCheck
from .selection_manager import SelectionManager

logger = logging.getLogger(__name__)

# GL(s, 3) grows fast; ternary codes stay short enough for the isomorphism search.
TERNARY_MAX_LENGTH = 6
ORACLE_MAX_STATES = 12


def draw_codes(seed: int, count: int, max_length: int) -> List[Tuple[str, LinearCode]]:
    """Deterministic list of (label, code) pairs over GF(2) and GF(3)."""
    rng = np.random.default_rng(seed)
    codes = []
    for index in range(count):
        p = int(rng.choice([2, 3]))
        longest = min(max_length, TERNARY_MAX_LENGTH) if p == 3 else max_length
        n = int(rng.integers(3, longest + 1))
        k = int(rng.integers(1, n))
        code_seed = int(rng.integers(2**31))
        code = random_code(p, n, k, seed=code_seed)
        codes.append((f"random{index}-gf{p}-{n}-{k}", code))
    return codes


class PropertiesCheck(BaseCheck):
    """Check that runs every structural property on random codes."""

    def __init__(self):
        super().__init__(
            name="PropertiesCheck",
            role="Property Auditor",
            goal="Exercise every structural property of characteristic pairs and KV-trellises on random codes"
        )

        self.characteristic = CharacteristicPairCheck()
        self.dual = DualConstructionCheck()
        self.rank_equivalence = RankEquivalenceCheck()
        self.manager = SelectionManager()

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Run the battery.

        Args:
            input_data: Dictionary with optional 'seed', 'count', 'max_length' and 'jobs'

        Returns:
            Dictionary with one entry per (code, property) in 'checks'
        """
        seed = input_data.get('seed', config.DEFAULT_SEED)
        count = input_data.get('count') or config.RANDOM_CODE_COUNT
        max_length = input_data.get('max_length') or config.RANDOM_CODE_MAX_LENGTH
        jobs = input_data.get('jobs') or config.DEFAULT_JOBS

        checks = []
        for label, code in draw_codes(seed, count, max_length):
            logger.info("  Checking %s", label)
            for prop, passed, details in self.check_code(code, jobs):
                checks.append({'name': f"{label}:{prop}", 'passed': passed, 'details': details})

        failed = [check['name'] for check in checks if not check['passed']]
        return {
            'passed': bool(checks) and not failed,
            'seed': seed,
            'checks': checks,
            'total': len(checks),
            'failed': failed,
        }

    def check_code(self, code: LinearCode, jobs: int = 1) -> List[Tuple[str, bool, str]]:
        results = []

        def record(prop: str, fn):
            try:
                passed, details = fn()
            except TrellisError as e:
                passed, details = False, f"{type(e).__name__}: {e}"
            results.append((prop, bool(passed), details))

        record('shortest_generators', lambda: self._shortest_generators(code))
        record('shift_equivariance', lambda: self._shift_equivariance(code))

        for tie_break in (LEX_FIRST, NORMALIZED):
            char = self.characteristic.execute({'code': code, 'tie_break': tie_break})
            record(f'{tie_break}:characteristic', lambda: (char['passed'], self._flags(char)))
            pair = char.get('pair')
            if pair is None:
                continue

            record(f'{tie_break}:kv_trellises', lambda: self._kv_trellises(pair, code))

            dual = self.dual.execute({'pair': pair, 'H': code.H})
            record(f'{tie_break}:dual_construction', lambda: (dual['passed'], dual.get('error', '')))
            if dual.get('dual') is None:
                continue

            ranks = self.rank_equivalence.execute({'pair': pair, 'dual': dual['dual'], 'H': code.H})
            record(f'{tie_break}:rank_equivalence', lambda: (ranks['passed'], ranks.get('error', '')))

            delegated = self.manager.execute({
                'pair': pair,
                'dual': dual['dual'],
                'H': code.H,
                'selections': ranks['full_rank_selections'],
                'jobs': jobs,
            })
            failed = [r['K'] for r in delegated['selection_results'] if not r['passed']]
            record(f'{tie_break}:dual_selections', lambda: (not failed, f"failed {failed}" if failed else ""))

        return results

    @staticmethod
    def _flags(result: Dict) -> str:
        if result.get('error'):
            return result['error']
        failed = [clause for clause, ok in result['clauses'].items() if not ok]
        if not result['reversed_spans']:
            failed.append('reversed_spans')
        if not result['greedy_by_end_agrees']:
            failed.append('greedy_by_end')
        return ", ".join(failed)

    @staticmethod
    def _shortest_generators(code: LinearCode) -> Tuple[bool, str]:
        violations = shortest_generator_violations(code)
        return not violations, ", ".join(f"{a} vs {b}" for a, b in violations[:5])

    @staticmethod
    def _shift_equivariance(code: LinearCode) -> Tuple[bool, str]:
        spans = characteristic_spans(code)
        for steps in range(1, code.n):
            shifted = set(characteristic_spans(cyclic_shift(code, steps)))
            if shifted != {span.shift(steps) for span in spans}:
                return False, f"shift by {steps}"
        return True, ""

    @staticmethod
    def _kv_trellises(pair, code: LinearCode) -> Tuple[bool, str]:
        """Trivial image intersection, end-row pattern and the cycle oracle on every KV-trellis."""
        problems = []
        for rows in kv_selections(pair):
            t = kv_trellis(pair, code.H, rows)
            if rank(intersection_of_images(t.N)) != 0:
                problems.append(f"{list(rows)}: nonzero image intersection")
            if end_row_failures(t):
                problems.append(f"{list(rows)}: end rows at {end_row_failures(t)}")
            vertices = sum(t.field.p ** s for s in t.base.state_dims)
            if sum(t.base.state_dims) <= ORACLE_MAX_STATES and vertices <= config.VERTEX_BUDGET:
                if cycle_label_set(t.base) != label_set_of_code(label_projection(t.base)):
                    problems.append(f"{list(rows)}: cycle labels differ from label code")
        return not problems, "; ".join(problems)
