"""Paired t-test for comparing two solvers on the same instances."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import special, stats

from mmirp_ext.errors import DegenerateDataError


@dataclass(frozen=True, slots=True)
class TTestResult:
    t_statistic: float
    p_value: float
    mean_difference: float
    confidence_interval_95: Tuple[float, float]
    n: int

    @property
    def dof(self) -> int:
        return self.n - 1


def two_sided_p(t_statistic: float, dof: int) -> float:
    """P(|T| >= |t|) for Student's t with ``dof`` degrees of freedom."""
    x = dof / (dof + t_statistic * t_statistic)
    return float(min(1.0, max(0.0, special.betainc(dof / 2.0, 0.5, x))))


def paired_t_test(series_a: Sequence[float], series_b: Sequence[float]) -> TTestResult:
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DegenerateDataError(user_msg=f"Paired series must have equal lengths, got {a.size} and {b.size}")
    n = int(a.size)
    if n < 2:
        raise DegenerateDataError(user_msg=f"Paired t-test needs at least two pairs, got {n}")
    diff = a - b
    sd = float(np.std(diff, ddof=1))
    if sd == 0.0:
        raise DegenerateDataError(user_msg="Differences have zero variance; the t statistic is undefined")
    mean = float(diff.mean())
    se = sd / math.sqrt(n)
    t_stat = mean / se
    dof = n - 1
    half = float(stats.t.ppf(0.975, dof)) * se
    return TTestResult(
        t_statistic=t_stat,
        p_value=two_sided_p(t_stat, dof),
        mean_difference=mean,
        confidence_interval_95=(mean - half, mean + half),
        n=n,
    )


def format_ttest(result: TTestResult) -> str:
    lo, hi = result.confidence_interval_95
    return (
        f"t = {result.t_statistic:.2f}, p = {result.p_value:.2g}, "
        f"mean difference = {result.mean_difference:.2f}, 95% CI ({lo:.2f}, {hi:.2f}), n = {result.n}"
    )


__all__ = ["TTestResult", "format_ttest", "paired_t_test", "two_sided_p"]
