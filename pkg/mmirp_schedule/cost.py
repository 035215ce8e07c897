"""Inventory-cost accounting."""
from __future__ import annotations

import numpy as np

from mmirp_core.models import Instance
from mmirp_schedule.decode import DeliveryPlan
from mmirp_schedule.matrix import ScheduleMatrix


def inventory_cost(plan: DeliveryPlan, instance: Instance) -> float:
    """Σ_{p,i,t} h^p_i · r^p_{i,t} over the decoded ledger."""
    return float(np.einsum("pit,ip->", plan.inventory, instance.holding))


def holding_cost_by_lag(schedule: ScheduleMatrix, instance: Instance) -> float:
    """Same cost from the delivery side: each unit held k periods costs k·h.

    Independent of the ledger; used to cross-check `inventory_cost`.
    """
    bits = schedule.bits
    total = 0.0
    for i in range(instance.n_customers):
        served_at = -1
        for t in range(instance.periods):
            if bits[i, t]:
                served_at = t
            if served_at < 0:
                continue
            lag = t - served_at
            if lag:
                total += lag * float(np.dot(instance.demand[:, i, t], instance.holding[i]))
    return total


__all__ = ["inventory_cost", "holding_cost_by_lag"]
