"""Exhaustive oracle, LP export and the direct-delivery baseline."""
from __future__ import annotations

from mmirp_exact.baseline import baseline_direct
from mmirp_exact.lp_export import assign_solution, build_lp_model, export_lp, family_counts, solution_values
from mmirp_exact.oracle import oracle_enumerate

__all__ = [
    "assign_solution",
    "baseline_direct",
    "build_lp_model",
    "export_lp",
    "family_counts",
    "oracle_enumerate",
    "solution_values",
]
