from .core import (
    CheckOutcome,
    CheckReport,
    Instance,
    SuiteResult,
    auto_output_path,
    build_report,
    emit_report,
    save_result,
    suite_report,
)
from .generators import InstanceSpec, fixture_instances, generate
from .registry import all_checks, run_suite, select_checks
from .scenarios import SCENARIOS, run_scenario
from .search import SearchResult, SearchTarget, search_counterexample

__all__ = [
    "CheckOutcome",
    "CheckReport",
    "Instance",
    "SuiteResult",
    "auto_output_path",
    "build_report",
    "emit_report",
    "save_result",
    "suite_report",
    "InstanceSpec",
    "fixture_instances",
    "generate",
    "all_checks",
    "run_suite",
    "select_checks",
    "SCENARIOS",
    "run_scenario",
    "SearchResult",
    "SearchTarget",
    "search_counterexample",
]
