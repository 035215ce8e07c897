"""Metrics, statistics and suite orchestration."""
from __future__ import annotations

from mmirp_bench.metrics import CSV_COLUMNS, Metrics, MetricsRecord, compute_metrics
from mmirp_bench.stats import TTestResult, format_ttest, paired_t_test
from mmirp_bench.suite import SuiteConfig

__all__ = [
    "CSV_COLUMNS",
    "Metrics",
    "MetricsRecord",
    "SuiteConfig",
    "TTestResult",
    "compute_metrics",
    "format_ttest",
    "paired_t_test",
]
