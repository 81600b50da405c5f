import logging
from typing import Any, Dict, List, Optional, TypedDict

from langgraph.graph import StateGraph, END

import config
from algebra.codes import CharacteristicPair, LinearCode
from algebra.linalg import FieldMatrix
from checks import (
    CharacteristicPairCheck,
    DualConstructionCheck,
    RankEquivalenceCheck,
    SelectionManager,
    VerdictCritic
)
from trellises.char_duality import DualCharResult
from utils import ReportGenerator

logger = logging.getLogger(__name__)


class SuiteState(TypedDict):
    """State object for the KV conjecture workflow."""
    code: LinearCode
    H: FieldMatrix
    tie_break: str
    jobs: int
    pair: Optional[CharacteristicPair]
    dual: Optional[DualCharResult]
    characteristic: dict
    dual_construction: dict
    rank_equivalence: dict
    selection_results: list
    verdict: dict
    reports: dict
    current_step: str
    errors: list


def _public(result: Dict[str, Any], *live: str) -> Dict[str, Any]:
    """Copy of a check result without its live objects."""
    return {key: value for key, value in result.items() if key not in live}


class KvConjectureWorkflow:
    """LangGraph workflow verifying the dual KV-trellis claims for one code."""

    def __init__(self, report_dir: Optional[str] = None):
        self.report_generator = ReportGenerator(report_dir) if report_dir else None

        # Initialize checks
        self.characteristic_check = CharacteristicPairCheck()
        self.dual_check = DualConstructionCheck()
        self.rank_check = RankEquivalenceCheck()
        self.manager = SelectionManager()
        self.critic = VerdictCritic()

        # Build workflow
        self.workflow = self._build_workflow()

    def _build_workflow(self):
        """Build the LangGraph workflow."""

        # Create state graph
        workflow = StateGraph(SuiteState)

        # Add nodes
        workflow.add_node("characteristic_pair", self.characteristic_pair)
        workflow.add_node("dual_construction", self.dual_construction)
        workflow.add_node("rank_equivalence", self.rank_equivalence)
        workflow.add_node("selections", self.selections)
        workflow.add_node("critique", self.critique)
        workflow.add_node("reports", self.generate_reports)

        # Define edges (workflow)
        workflow.add_conditional_edges(
            "characteristic_pair", self._route,
            {"continue": "dual_construction", "abort": "critique"}
        )
        workflow.add_conditional_edges(
            "dual_construction", self._route,
            {"continue": "rank_equivalence", "abort": "critique"}
        )
        workflow.add_edge("rank_equivalence", "selections")
        workflow.add_edge("selections", "critique")
        workflow.add_edge("critique", "reports")
        workflow.add_edge("reports", END)

        # Set entry point
        workflow.set_entry_point("characteristic_pair")

        return workflow.compile()

    @staticmethod
    def _route(state: SuiteState) -> str:
        step = state['current_step']
        if step == 'characteristic_pair' and state.get('pair') is None:
            return "abort"
        if step == 'dual_construction' and state.get('dual') is None:
            return "abort"
        return "continue"

    @staticmethod
    def _banner(title: str):
        logger.info("=" * 60)
        logger.info(title)
        logger.info("=" * 60)

    def characteristic_pair(self, state: SuiteState) -> SuiteState:
        """Step 1: Build the characteristic pair."""
        self._banner("STEP 1: Building Characteristic Pair")

        result = self.characteristic_check.execute({
            'code': state['code'],
            'tie_break': state['tie_break']
        })
        state['pair'] = result.get('pair')
        state['characteristic'] = _public(result, 'pair')
        state['current_step'] = 'characteristic_pair'

        if state['pair'] is None:
            logger.info("✗ Error building characteristic pair: %s", result.get('error'))
            state['errors'].append(f"Characteristic pair error: {result.get('error')}")
        else:
            logger.info("✓ Spans: %s", ", ".join(result['summary']['spans']))
            logger.info("  All clauses hold: %s", all(result['clauses'].values()))

        return state

    def dual_construction(self, state: SuiteState) -> SuiteState:
        """Step 2: Construct the dual characteristic matrix."""
        self._banner("STEP 2: Constructing Dual Characteristic Matrix")

        result = self.dual_check.execute({
            'pair': state['pair'],
            'H': state['H']
        })
        state['dual'] = result.get('dual')
        state['dual_construction'] = _public(result, 'dual')
        state['current_step'] = 'dual_construction'

        if state['dual'] is None:
            logger.info("✗ Error constructing dual: %s", result.get('error'))
            state['errors'].append(f"Dual construction error: {result.get('error')}")
        else:
            logger.info("✓ Dual spans: %s", ", ".join(result['summary']['spans']))
            logger.info("  Dual cycles verified: %d/%d", sum(result['dual_cycles']), len(result['dual_cycles']))

        return state

    def rank_equivalence(self, state: SuiteState) -> SuiteState:
        """Step 3: Compare primal and dual selection ranks."""
        self._banner("STEP 3: Checking Rank Equivalence")

        result = self.rank_check.execute({
            'pair': state['pair'],
            'dual': state['dual'],
            'H': state['H'],
            'code': state['code']
        })
        state['rank_equivalence'] = result
        state['current_step'] = 'rank_equivalence'

        if result.get('error'):
            logger.info("✗ Error checking ranks: %s", result['error'])
            state['errors'].append(f"Rank equivalence error: {result['error']}")
        else:
            mark = "✓" if result['passed'] else "✗"
            logger.info("%s Full-rank selections: %d", mark, len(result['full_rank_selections']))

        return state

    def selections(self, state: SuiteState) -> SuiteState:
        """Step 4: Delegate every full-rank selection."""
        self._banner("STEP 4: Checking Dual Selections")

        result = self.manager.execute({
            'pair': state['pair'],
            'dual': state['dual'],
            'H': state['H'],
            'selections': state['rank_equivalence'].get('full_rank_selections', []),
            'jobs': state['jobs']
        })
        state['selection_results'] = result['selection_results']
        state['current_step'] = 'selections'

        logger.info("✓ Checked %d selections", result['total_selections'])
        logger.info("  Passed: %d", result['passed_selections'])

        return state

    def critique(self, state: SuiteState) -> SuiteState:
        """Step 5: Critique the aggregated results."""
        self._banner("STEP 5: Reviewing Verdicts")

        verdict = self.critic.execute(state)
        state['verdict'] = verdict
        state['current_step'] = 'critique'

        logger.info("%s Verdict: %s", "✓" if verdict['passed'] else "✗", "PASS" if verdict['passed'] else "FAIL")
        for finding in verdict['findings']:
            logger.info("  - %s", finding)

        return state

    def generate_reports(self, state: SuiteState) -> SuiteState:
        """Step 6: Write text and JSON reports when a report directory is configured."""
        self._banner("STEP 6: Generating Reports")
        state['current_step'] = 'reports'

        if self.report_generator is None:
            logger.info("  No report directory configured")
            return state

        try:
            name = state['code'].name or "code"
            summary = suite_report(state)
            state['reports'] = {
                'text': self.report_generator.generate_suite_report(summary, name),
                'json': self.report_generator.save_json_report(summary, f"kv_conjecture_{name}.json"),
            }
            logger.info("✓ Generated reports:")
            for path in state['reports'].values():
                logger.info("  - %s", path)
        except OSError as e:
            logger.info("✗ Error generating reports: %s", e)
            state['errors'].append(f"Report error: {e}")

        return state

    def run(self, code: LinearCode, tie_break: Optional[str] = None, H: Optional[FieldMatrix] = None,
            jobs: Optional[int] = None) -> Dict[str, Any]:
        """
        Run the complete workflow.

        Args:
            code: Code with full support on both sides
            tie_break: Generator policy for the characteristic pair
            H: Parity-check rows to build the BCJR trellises from (default: canonical H)
            jobs: Worker threads for the selection checks

        Returns:
            JSON-ready summary of the final state
        """
        initial_state = {
            'code': code,
            'H': code.H if H is None else H,
            'tie_break': tie_break or config.DEFAULT_TIE_BREAK,
            'jobs': jobs or config.DEFAULT_JOBS,
            'pair': None,
            'dual': None,
            'characteristic': {},
            'dual_construction': {},
            'rank_equivalence': {},
            'selection_results': [],
            'verdict': {},
            'reports': {},
            'current_step': '',
            'errors': []
        }

        self._banner("STARTING KV CONJECTURE WORKFLOW")
        logger.info("Code: %s", code)

        final_state = self.workflow.invoke(initial_state)

        self._banner("WORKFLOW COMPLETE")
        if final_state.get('errors'):
            logger.warning("⚠ Errors encountered: %d", len(final_state['errors']))
            for error in final_state['errors']:
                logger.warning("  - %s", error)

        return suite_report(final_state)


def suite_report(state: Dict[str, Any]) -> Dict[str, Any]:
    """JSON-ready view of a workflow state."""
    code = state['code']
    return {
        'code': {'name': code.name, 'p': code.field.p, 'n': code.n, 'k': code.k},
        'tie_break': state['tie_break'],
        'characteristic_pair': state['pair'].to_dict() if state.get('pair') is not None else None,
        'dual_pair': state['dual'].to_dict() if state.get('dual') is not None else None,
        'characteristic': _public(state.get('characteristic') or {}, 'summary'),
        'dual_construction': _public(state.get('dual_construction') or {}, 'summary'),
        'rank_equivalence': state.get('rank_equivalence') or {},
        'selection_results': state.get('selection_results') or [],
        'verdict': state.get('verdict') or {},
        'reports': state.get('reports') or {},
        'errors': list(state.get('errors') or []),
    }


def kv_conjecture_suite(code: LinearCode, tie_break: Optional[str] = None, H: Optional[FieldMatrix] = None,
                        jobs: Optional[int] = None, report_dir: Optional[str] = None) -> Dict[str, Any]:
    """Run the KV conjecture workflow once and return its summary."""
    return KvConjectureWorkflow(report_dir).run(code, tie_break, H, jobs)


graph = KvConjectureWorkflow().workflow
