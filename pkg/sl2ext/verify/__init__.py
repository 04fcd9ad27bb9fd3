"""Property suites behind ``sl2ext verify``."""

from .suites import SUITES, SuiteReport, SuiteSettings, run_suite

__all__ = ["SUITES", "SuiteReport", "SuiteSettings", "run_suite"]
