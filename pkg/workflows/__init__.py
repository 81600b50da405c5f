from .kv_conjecture_workflow import KvConjectureWorkflow, SuiteState, kv_conjecture_suite, suite_report

__all__ = ['KvConjectureWorkflow', 'SuiteState', 'kv_conjecture_suite', 'suite_report']
