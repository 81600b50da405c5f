from typing import Any, Dict, List

from .base_check import BaseCheck


class VerdictCritic(BaseCheck):
    """Check that reviews the aggregated results and issues the final verdict."""

    def __init__(self):
        super().__init__(
            name="VerdictCritic",
            role="Verification Auditor",
            goal="Review every check result, flag build-stopping defects and decide pass or fail"
        )

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Critique the suite results.

        Args:
            input_data: Dictionary containing 'characteristic', 'dual_construction',
                'rank_equivalence', 'selection_results' and 'errors'

        Returns:
            Dictionary with the verdict and its findings
        """
        findings: List[str] = []
        blocking = False

        for stage in ('characteristic', 'dual_construction', 'rank_equivalence'):
            result = input_data.get(stage) or {}
            if not result:
                findings.append(f"{stage}: not run")
                blocking = True
                continue
            if result.get('blocking'):
                blocking = True
            if not result.get('passed', False):
                findings.append(self._describe(stage, result))

        selections = input_data.get('selection_results') or []
        if not selections and not blocking:
            findings.append("selections: no full-rank selection to check")
        for selection in selections:
            if not selection.get('passed', False):
                findings.append(f"selection {selection.get('K')}: {self._failed_parts(selection)}")

        errors = input_data.get('errors') or []
        approved = sum(1 for s in selections if s.get('passed'))
        passed = not blocking and not findings and not errors

        return {
            'passed': passed,
            'blocking': blocking,
            'findings': findings,
            'total_reviewed': len(selections),
            'approved': approved,
            'rejected': len(selections) - approved,
            'approval_rate': (approved / len(selections) * 100) if selections else 0,
        }

    @staticmethod
    def _describe(stage: str, result: Dict) -> str:
        if result.get('error'):
            return f"{stage}: {result.get('error_type', 'error')}: {result['error']}"
        flags = [key for key, value in result.items() if value is False and key not in ('passed', 'blocking')]
        clauses = [key for key, value in (result.get('clauses') or {}).items() if not value]
        return f"{stage}: failed {', '.join(flags + clauses) or 'check'}"

    @staticmethod
    def _failed_parts(selection: Dict) -> str:
        if selection.get('error'):
            return selection['error']
        parts = [
            check for check in ('local_duality', 'bcjr_symmetry', 'profile')
            if not selection.get(check, {}).get('passed', False)
        ]
        return ", ".join(parts)

    def generate_critique_summary(self, verdict: Dict) -> str:
        """Generate summary of the verdict."""

        report = "VERDICT SUMMARY\n"
        report += "=" * 60 + "\n\n"
        report += f"Verdict: {'PASS' if verdict.get('passed') else 'FAIL'}\n"
        report += f"  Approved selections: {verdict.get('approved', 0)}/{verdict.get('total_reviewed', 0)}\n"

        if verdict.get('findings'):
            report += "\nFindings:\n"
            for finding in verdict['findings']:
                report += f"  - {finding}\n"

        return report
