"""Schedule feasibility conditions.

C1  the first delivery of a customer comes no later than its first positive demand
C2  each customer-period load fits on a single vehicle (no split delivery)
C3  the period's loads fit the fleet and can be packed one customer per vehicle
C4  end-of-period weighted on-hand inventory stays within storage capacity
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Literal

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext.errors import PackingInfeasibleError
from mmirp_routing.packing import assign_vehicles
from mmirp_schedule.decode import _decode_arrays
from mmirp_schedule.matrix import ScheduleMatrix

C1_COVERAGE = "C1"
C2_SPLIT = "C2"
C3_FLEET = "C3"
C4_STORAGE = "C4"

CapacityMode = Literal["ffd", "aggregate"]

_EPS = 1e-9


@dataclass(frozen=True, slots=True)
class ScheduleViolation:
    condition: str
    customer: int | None
    period: int
    detail: str


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[ScheduleViolation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def of(self, condition: str) -> List[ScheduleViolation]:
        return [v for v in self.violations if v.condition == condition]


def check_feasibility(
    schedule: ScheduleMatrix,
    instance: Instance,
    routing_capacity_mode: CapacityMode = "ffd",
) -> FeasibilityReport:
    """Evaluate C1–C4; customers and periods in the report are 1-based."""
    if not schedule.matches(instance):
        return FeasibilityReport(
            (ScheduleViolation(C1_COVERAGE, None, 0, f"shape {schedule.shape} does not match {instance.shape}"),)
        )
    bits = schedule.bits
    deliveries, inventory, uncovered = _decode_arrays(bits, instance.demand)
    found: List[ScheduleViolation] = []

    for i, t in uncovered:
        found.append(ScheduleViolation(C1_COVERAGE, i + 1, t + 1, "positive demand before first delivery"))

    weights = instance.weights
    loads = np.einsum("p,pit->it", weights, deliveries)
    largest = float(instance.capacities.max()) if instance.n_vehicles else 0.0
    for i, t in zip(*np.nonzero(loads > largest + _EPS)):
        found.append(ScheduleViolation(C2_SPLIT, int(i) + 1, int(t) + 1, f"load {loads[i, t]:.6g} exceeds largest vehicle {largest:.6g}"))

    fleet = float(instance.capacities.sum())
    for t in range(instance.periods):
        served = np.flatnonzero(bits[:, t])
        period_loads = {int(i) + 1: float(loads[i, t]) for i in served}
        total = sum(period_loads.values())
        if total > fleet + _EPS:
            found.append(ScheduleViolation(C3_FLEET, None, t + 1, f"period load {total:.6g} exceeds fleet {fleet:.6g}"))
            continue
        if routing_capacity_mode == "ffd" and period_loads and max(period_loads.values()) <= largest + _EPS:
            try:
                assign_vehicles(period_loads, instance.vehicles, t + 1)
            except PackingInfeasibleError as exc:
                found.append(ScheduleViolation(C3_FLEET, None, t + 1, exc.user_msg))

    stock = np.einsum("p,pit->it", weights, inventory)
    storage = instance.storage
    for i, t in zip(*np.nonzero(stock > storage[:, None] + _EPS)):
        found.append(ScheduleViolation(C4_STORAGE, int(i) + 1, int(t) + 1, f"on-hand {stock[i, t]:.6g} exceeds storage {storage[i]:.6g}"))

    return FeasibilityReport(tuple(found))


__all__ = [
    "C1_COVERAGE",
    "C2_SPLIT",
    "C3_FLEET",
    "C4_STORAGE",
    "CapacityMode",
    "ScheduleViolation",
    "FeasibilityReport",
    "check_feasibility",
]
