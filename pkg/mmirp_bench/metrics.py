"""Gap metrics between external bounds and heuristic values."""
from __future__ import annotations

import math
from typing import Any, Dict, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict

from mmirp_ext.errors import DomainError

# Column order of the benchmark CSV; the trailing block extends the core report.
CSV_COLUMNS = [
    "instance_id",
    "I",
    "T",
    "V",
    "P",
    "seed",
    "LB",
    "UB",
    "HBV_maga",
    "HBV_baseline",
    "difficulty",
    "closeness_maga",
    "saving_maga",
    "runtime_maga_s",
    "runtime_baseline_s",
    "closeness_baseline",
    "saving_baseline",
    "mean_maga",
    "oracle",
]


class Metrics(NamedTuple):
    difficulty: Optional[float]
    closeness: Optional[float]
    saving: Optional[float]


def _present(value: Optional[float]) -> bool:
    return value is not None and not (isinstance(value, float) and math.isnan(value))


def _positive(name: str, value: float) -> float:
    if value <= 0:
        raise DomainError(user_msg=f"{name} must be positive to serve as a denominator, got {value}")
    return float(value)


def compute_metrics(lb: Optional[float], ub: Optional[float], hbv: Optional[float]) -> Metrics:
    """Difficulty (UB−LB)/UB, closeness (HBV−LB)/HBV and saving (UB−HBV)/UB.

    A metric whose inputs are missing is None; None is never replaced by zero.
    """
    has_lb, has_ub, has_hbv = _present(lb), _present(ub), _present(hbv)
    difficulty = closeness = saving = None
    if has_lb and has_ub:
        difficulty = (ub - lb) / _positive("UB", ub)
    if has_lb and has_hbv:
        closeness = (hbv - lb) / _positive("HBV", hbv)
    if has_ub and has_hbv:
        saving = (ub - hbv) / _positive("UB", ub)
    return Metrics(difficulty, closeness, saving)


class MetricsRecord(BaseModel):
    """One benchmark row."""

    instance_id: str
    n_customers: int
    n_periods: int
    n_vehicles: int
    n_products: int
    seed: int
    lb: Optional[float] = None
    ub: Optional[float] = None
    hbv_maga: Optional[float] = None
    hbv_baseline: Optional[float] = None
    mean_maga: Optional[float] = None
    oracle: Optional[float] = None
    runtime_maga_s: Optional[float] = None
    runtime_baseline_s: Optional[float] = None

    model_config = ConfigDict(extra="forbid", frozen=True)

    @property
    def maga(self) -> Metrics:
        return compute_metrics(self.lb, self.ub, self.hbv_maga)

    @property
    def baseline(self) -> Metrics:
        return compute_metrics(self.lb, self.ub, self.hbv_baseline)

    def as_row(self) -> Dict[str, Any]:
        maga, baseline = self.maga, self.baseline
        return {
            "instance_id": self.instance_id,
            "I": self.n_customers,
            "T": self.n_periods,
            "V": self.n_vehicles,
            "P": self.n_products,
            "seed": self.seed,
            "LB": self.lb,
            "UB": self.ub,
            "HBV_maga": self.hbv_maga,
            "HBV_baseline": self.hbv_baseline,
            "difficulty": maga.difficulty,
            "closeness_maga": maga.closeness,
            "saving_maga": maga.saving,
            "runtime_maga_s": self.runtime_maga_s,
            "runtime_baseline_s": self.runtime_baseline_s,
            "closeness_baseline": baseline.closeness,
            "saving_baseline": baseline.saving,
            "mean_maga": self.mean_maga,
            "oracle": self.oracle,
        }


__all__ = ["CSV_COLUMNS", "Metrics", "MetricsRecord", "compute_metrics"]
