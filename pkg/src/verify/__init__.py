"""
Invariant verification: suite results, the concurrent runner and the suites.
"""

from src.verify.runner import GROUPS, SuiteRunner, all_passed, format_table
from src.verify.suite import Check, SuiteContext, SuiteResult, SuiteStatus

__all__ = [
    "GROUPS",
    "Check",
    "SuiteContext",
    "SuiteResult",
    "SuiteRunner",
    "SuiteStatus",
    "all_passed",
    "format_table",
]
