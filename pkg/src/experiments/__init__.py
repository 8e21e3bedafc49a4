"""
Convergence-rate experiments.

- registry: stable ids for the test functions
- rates: RateReport, run_rates, suboptimality_study, sharpness_identity, fit_slope,
  judge_rates, judge_suboptimality
- report: CSV/JSON emission
"""

from src.experiments.rates import (
    RateReport,
    fit_slope,
    h_ratio_study,
    judge_rates,
    judge_suboptimality,
    run_rates,
    sharpness_identity,
    suboptimality_study,
)
from src.experiments.registry import TestFn, registry
from src.experiments.report import emit_report

__all__ = [
    "RateReport",
    "TestFn",
    "emit_report",
    "fit_slope",
    "h_ratio_study",
    "judge_rates",
    "judge_suboptimality",
    "registry",
    "run_rates",
    "sharpness_identity",
    "suboptimality_study",
]
