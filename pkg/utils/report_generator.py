import os
import logging
from datetime import datetime
from typing import Dict, List

import config
from .serialization import dumps

logger = logging.getLogger(__name__)


class ReportGenerator:
    """Write verification reports as text and JSON."""

    def __init__(self, report_dir: str = None):
        self.report_dir = report_dir or config.REPORTS_DIR
        os.makedirs(self.report_dir, exist_ok=True)

    def _path(self, kind: str, code_name: str, extension: str) -> str:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        safe_name = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in code_name) or "code"
        return os.path.join(self.report_dir, f"{kind}_report_{safe_name}_{timestamp}.{extension}")

    def generate_suite_report(self, results: Dict, code_name: str) -> str:
        """
        Generate the text report of a KV conjecture run.

        Args:
            results: Final workflow state (characteristic pair, dual, selections, verdict)
            code_name: Label of the code under test

        Returns:
            Path to generated report
        """
        filepath = self._path("kv_conjecture", code_name, "txt")

        with open(filepath, 'w', encoding='utf-8') as f:
            f.write("=" * 80 + "\n")
            f.write("KV CONJECTURE VERIFICATION REPORT\n")
            f.write(f"Code: {code_name}\n")
            f.write(f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
            f.write("=" * 80 + "\n\n")

            f.write("SUMMARY\n")
            f.write("-" * 80 + "\n")
            verdict = results.get('verdict', {})
            f.write(f"Verdict: {'PASS' if verdict.get('passed') else 'FAIL'}\n")
            selections = results.get('selection_results', [])
            f.write(f"Full-rank selections checked: {len(selections)}\n")
            failed = [s for s in selections if not s.get('passed')]
            f.write(f"Failed selections: {len(failed)}\n\n")

            pair = results.get('characteristic_pair') or {}
            if pair:
                f.write("CHARACTERISTIC PAIR\n")
                f.write("-" * 80 + "\n")
                for row, span in zip(pair.get('X', []), pair.get('spans', [])):
                    f.write(f"  {''.join(map(str, row))}  {span}\n")
                f.write("\n")

            dual = results.get('dual_pair') or {}
            if dual:
                f.write("DUAL CHARACTERISTIC PAIR\n")
                f.write("-" * 80 + "\n")
                for row, span in zip(dual.get('Y', []), dual.get('spans', [])):
                    f.write(f"  {''.join(map(str, row))}  {span}\n")
                f.write("\n")

            f.write("SELECTIONS\n")
            f.write("-" * 80 + "\n\n")
            for idx, selection in enumerate(selections, 1):
                f.write(f"Selection #{idx}\n")
                f.write(f"  K: {selection.get('K')}\n")
                f.write(f"  Local duality: {selection.get('local_duality', {}).get('holds', False)}\n")
                f.write(f"  BCJR symmetry: {selection.get('bcjr_symmetry', {}).get('holds', False)}\n")
                f.write(f"  SCP equal: {selection.get('profile', {}).get('scp_equal', False)}\n")
                if selection.get('error'):
                    f.write(f"  Error: {selection['error']}\n")
                f.write("\n")

            self._write_list(f, "FINDINGS", verdict.get('findings', []))
            self._write_list(f, "ERRORS", results.get('errors', []))

        logger.info("✓ Suite report generated: %s", filepath)
        return filepath

    def generate_check_report(self, checks: List[Dict], suite: str) -> str:
        """
        Generate the report of a fixture or property suite.

        Args:
            checks: One dict per check with 'name', 'passed' and optional 'details'
            suite: Suite name

        Returns:
            Path to generated report
        """
        filepath = self._path(suite, suite, "txt")

        with open(filepath, 'w', encoding='utf-8') as f:
            f.write("=" * 80 + "\n")
            f.write(f"{suite.upper()} REPORT\n")
            f.write(f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
            f.write("=" * 80 + "\n\n")

            passed = sum(1 for check in checks if check.get('passed'))
            f.write(f"Passed: {passed}/{len(checks)}\n\n")
            for check in checks:
                mark = "✓" if check.get('passed') else "✗"
                f.write(f"{mark} {check.get('name', 'unnamed')}\n")
                if check.get('details'):
                    f.write(f"    {check['details']}\n")

        logger.info("✓ Check report generated: %s", filepath)
        return filepath

    @staticmethod
    def _write_list(f, title: str, items: List[str]):
        if not items:
            return
        f.write(f"{title}\n")
        f.write("-" * 80 + "\n")
        for item in items:
            f.write(f"  - {item}\n")
        f.write("\n")

    def save_json_report(self, data: Dict, filename: str) -> str:
        """Save report data as JSON."""
        filepath = os.path.join(self.report_dir, filename)

        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(dumps(data))

        logger.info("✓ JSON report saved: %s", filepath)
        return filepath
