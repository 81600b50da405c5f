#!/usr/bin/env python3
"""
Example script demonstrating programmatic usage of tailbiter.
"""

import logging

import config
from algebra import characteristic_pair
from utils.serialization import fixture_code
from workflows import KvConjectureWorkflow


def main():
    logging.basicConfig(level=config.LOG_LEVEL, format="%(message)s")

    # Example code: the [4,2] self-dual binary code from the fixture corpus
    entry = fixture_code("selfdual_bcjr_b")
    code = entry.code

    print("=" * 60)
    print("tailbiter - Example")
    print("=" * 60)
    print(f"Code: {code}")
    print()

    pair = characteristic_pair(code)
    print("Characteristic pair:")
    for row, span in zip(pair.to_dict()["X"], pair.spans):
        print(f"  {''.join(str(x) for x in row)}  {span}")
    print()

    # Initialize workflow
    print("Initializing workflow...")
    workflow = KvConjectureWorkflow(report_dir=config.REPORTS_DIR)

    result = workflow.run(code, H=entry.H)

    # Print summary
    print("\n" + "=" * 60)
    print("VERIFICATION COMPLETE")
    print("=" * 60)

    dual_pair = result.get('dual_pair') or {}
    if dual_pair:
        print("\nDual characteristic pair:")
        for row, span in zip(dual_pair['Y'], dual_pair['spans']):
            print(f"  {''.join(str(x) for x in row)}  {span}")

    verdict = result.get('verdict', {})
    print(f"\nSelections checked: {verdict.get('total_reviewed', 0)}")
    print(f"Passed: {verdict.get('approved', 0)}/{verdict.get('total_reviewed', 0)}")
    print(f"Verdict: {'PASS' if verdict.get('passed') else 'FAIL'}")

    # Show reports
    reports = result.get('reports', {})
    if reports:
        print("\nReports Generated:")
        for report_type, report_path in reports.items():
            print(f"  - {report_type}: {report_path}")

    # Show errors if any
    errors = result.get('errors', [])
    if errors:
        print(f"\nErrors ({len(errors)}):")
        for error in errors:
            print(f"  - {error}")

    print("\n" + "=" * 60)


if __name__ == "__main__":
    main()
