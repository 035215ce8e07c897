"""Decode a schedule into delivery quantities and the inventory ledger."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext.errors import InfeasibleDecodeError, ValidationError
from mmirp_schedule.matrix import ScheduleMatrix


@dataclass(frozen=True, eq=False)
class DeliveryPlan:
    """Arrays indexed (product, customer, period), in product units."""

    deliveries: np.ndarray
    inventory: np.ndarray

    def __post_init__(self) -> None:
        for name in ("deliveries", "inventory"):
            array = np.array(getattr(self, name), dtype=float, copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)


def _decode_arrays(bits: np.ndarray, demand: np.ndarray) -> Tuple[np.ndarray, np.ndarray, List[Tuple[int, int]]]:
    """Decode without raising; also return (customer, period) positions left uncovered.

    A delivery in period s covers demand from s up to, not including, the
    customer's next scheduled period. On-hand inventory at the end of t is
    the demand still to be consumed from the same delivery, summed directly
    so that it is never negative from cancellation.
    """
    n_p, n_i, n_t = demand.shape
    deliveries = np.zeros_like(demand, dtype=float)
    inventory = np.zeros_like(demand, dtype=float)
    uncovered: List[Tuple[int, int]] = []
    for i in range(n_i):
        starts = np.flatnonzero(bits[i])
        first = int(starts[0]) if starts.size else n_t
        if first > 0:
            lead = demand[:, i, :first]
            for t in np.flatnonzero((lead > 0).any(axis=0)):
                uncovered.append((i, int(t)))
        if not starts.size:
            continue
        ends = np.append(starts[1:], n_t)
        for s, e in zip(starts, ends):
            window = demand[:, i, s:e]
            # remaining[:, k] = demand of window periods after position k
            remaining = np.cumsum(window[:, ::-1], axis=1)[:, ::-1]
            deliveries[:, i, s] = remaining[:, 0]
            inventory[:, i, s : e - 1] = remaining[:, 1:]
    return deliveries, inventory, uncovered


def decode(schedule: ScheduleMatrix, instance: Instance) -> DeliveryPlan:
    """Delivery quantities and end-of-period inventory implied by ``schedule``."""
    if not schedule.matches(instance):
        raise ValidationError(user_msg=f"Schedule shape {schedule.shape} does not match instance shape {instance.shape}")
    deliveries, inventory, uncovered = _decode_arrays(schedule.bits, instance.demand)
    if uncovered:
        i, t = uncovered[0]
        raise InfeasibleDecodeError(
            user_msg=f"Customer {i + 1} has positive demand in period {t + 1} before its first delivery",
            safe_context={"uncovered": [f"{a + 1}:{b + 1}" for a, b in uncovered]},
        )
    return DeliveryPlan(deliveries=deliveries, inventory=inventory)


def weighted_loads(plan: DeliveryPlan, instance: Instance) -> np.ndarray:
    """Weighted shipment Σ_p α^p · delivered per (customer, period)."""
    return np.einsum("p,pit->it", instance.weights, plan.deliveries)


def weighted_inventory(plan: DeliveryPlan, instance: Instance) -> np.ndarray:
    return np.einsum("p,pit->it", instance.weights, plan.inventory)


__all__ = ["DeliveryPlan", "decode", "weighted_loads", "weighted_inventory"]
