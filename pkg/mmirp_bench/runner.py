"""Benchmark orchestration: dispatch suite entries, join bounds, build the report."""
from __future__ import annotations

import time
from pathlib import Path
from typing import Dict, List, Tuple

import pandas as pd

from mmirp_bench.metrics import CSV_COLUMNS, MetricsRecord
from mmirp_bench.suite import SuiteConfig
from mmirp_bench.tasks import solve_instance_task
from mmirp_ext.errors import BoundsFileError
from mmirp_ext.logging import log_info
from mmirp_ga.schemas import GaConfig

Bounds = Dict[str, Tuple[float | None, float | None]]


def _optional(value) -> float | None:
    return None if pd.isna(value) else float(value)


def load_bounds(path: str | Path) -> Bounds:
    """Read ``instance_id, LB, UB`` rows; blank cells mean the solver returned nothing."""
    try:
        frame = pd.read_csv(path)
    except (OSError, ValueError) as exc:
        raise BoundsFileError(user_msg=f"Cannot read bounds file {path}: {exc}") from exc
    missing = {"instance_id", "LB", "UB"} - set(frame.columns)
    if missing:
        raise BoundsFileError(user_msg=f"Bounds file {path} lacks columns: {', '.join(sorted(missing))}")
    if frame["instance_id"].duplicated().any():
        duplicate = frame.loc[frame["instance_id"].duplicated(), "instance_id"].iloc[0]
        raise BoundsFileError(user_msg=f"Bounds file {path} repeats instance {duplicate}")
    return {str(row.instance_id): (_optional(row.LB), _optional(row.UB)) for row in frame.itertuples(index=False)}


def build_report(records: List[MetricsRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([r.as_row() for r in records], columns=CSV_COLUMNS)
    measured = [c for c in CSV_COLUMNS if c not in {"instance_id", "I", "T", "V", "P", "seed"}]
    frame[measured] = frame[measured].astype(float)
    frame = frame.sort_values(["difficulty", "instance_id"], ascending=[False, True], na_position="last", kind="mergesort")
    return frame.reset_index(drop=True)


def run_benchmark(
    suite: SuiteConfig,
    ga: GaConfig,
    bounds_file: str | Path | None = None,
    *,
    repeats: int = 1,
    with_oracle: bool = True,
    output: str | Path | None = None,
) -> pd.DataFrame:
    """Solve every suite entry on the worker pool and return the ranked report.

    Rows are ordered by difficulty, hardest first; rows without bounds go last
    in instance-id order.
    """
    entries = suite.entries()
    bounds = load_bounds(bounds_file) if bounds_file is not None else {}
    known = {entry.instance_id for entry in entries}
    unknown = sorted(set(bounds) - known)
    if unknown:
        raise BoundsFileError(
            user_msg=f"Bounds file references unknown instances: {', '.join(unknown[:5])}",
            safe_context={"unknown": unknown},
        )

    started = time.perf_counter()
    ga_payload = ga.model_dump(mode="json")
    pending = [
        solve_instance_task.delay(entry.model_dump(mode="json"), ga_payload, repeats, with_oracle)
        for entry in entries
    ]
    rows = {row["instance_id"]: row for row in (result.get() for result in pending)}

    records = []
    for instance_id in sorted(rows):
        lb, ub = bounds.get(instance_id, (None, None))
        records.append(MetricsRecord(**rows[instance_id], lb=lb, ub=ub))
    report = build_report(records)

    log_info(
        "Benchmark finished",
        component="bench",
        elapsed_ms=int((time.perf_counter() - started) * 1000),
        context={"instances": len(records), "with_bounds": len(bounds)},
    )
    if output is not None:
        target = Path(output)
        target.parent.mkdir(parents=True, exist_ok=True)
        report.to_csv(target, index=False)
    return report


__all__ = ["build_report", "load_bounds", "run_benchmark"]
