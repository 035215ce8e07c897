"""Repair infeasible schedules by inserting deliveries."""
from __future__ import annotations

import numpy as np

from mmirp_core.models import Instance
from mmirp_schedule.feasibility import (
    C2_SPLIT,
    C3_FLEET,
    C4_STORAGE,
    CapacityMode,
    check_feasibility,
)
from mmirp_schedule.decode import _decode_arrays
from mmirp_schedule.matrix import ScheduleMatrix


def _window_end(row: np.ndarray, start: int) -> int:
    """Exclusive end of the delivery window opened at ``start``."""
    later = np.flatnonzero(row[start + 1 :])
    return start + 1 + int(later[0]) if later.size else row.size


def _window_start(row: np.ndarray, period: int) -> int:
    earlier = np.flatnonzero(row[: period + 1])
    return int(earlier[-1]) if earlier.size else -1


def force_first_deliveries(bits: np.ndarray, demand: np.ndarray) -> np.ndarray:
    """Set the bit of each customer's first positive-demand period when nothing covers it."""
    bits = bits.copy()
    positive = (demand > 0).any(axis=0)
    for i in range(bits.shape[0]):
        needed = np.flatnonzero(positive[i])
        if not needed.size:
            continue
        first_needed = int(needed[0])
        if not bits[i, : first_needed + 1].any():
            bits[i, first_needed] = 1
    return bits


def repair(
    schedule: ScheduleMatrix,
    instance: Instance,
    routing_capacity_mode: CapacityMode = "ffd",
) -> ScheduleMatrix | None:
    """Return a feasible superset of ``schedule`` or None when it must be dismissed.

    Each step turns one 0-bit into 1, so at most |I|·|T| insertions happen:
      - storage overflow at (i, t): deliver again in the last period of the
        window that caused it, one period before the next scheduled delivery;
      - single-vehicle overload at (i, t): split the window at its midpoint;
      - fleet overload or failed packing in period t: split the window of the
        heaviest splittable customer served in t at its midpoint.
    An overload on a one-period window cannot be split and dismisses the
    chromosome.
    """
    bits = force_first_deliveries(schedule.bits, instance.demand)
    limit = bits.size
    for _ in range(limit + 1):
        candidate = ScheduleMatrix(bits)
        report = check_feasibility(candidate, instance, routing_capacity_mode)
        if report.feasible:
            return schedule if candidate == schedule else candidate
        step = _next_insertion(bits, instance, report)
        if step is None:
            return None
        i, t = step
        bits = bits.copy()
        bits[i, t] = 1
    return None


def _next_insertion(bits: np.ndarray, instance: Instance, report) -> tuple[int, int] | None:
    split = report.of(C2_SPLIT)
    if split:
        v = split[0]
        i, s = v.customer - 1, v.period - 1
        e = _window_end(bits[i], s)
        if e - s < 2:
            return None
        return i, s + (e - s) // 2

    storage = report.of(C4_STORAGE)
    if storage:
        v = storage[0]
        i, t = v.customer - 1, v.period - 1
        s = _window_start(bits[i], t)
        e = _window_end(bits[i], s)
        return i, e - 1

    fleet = report.of(C3_FLEET)
    if fleet:
        t = fleet[0].period - 1
        deliveries, _, _ = _decode_arrays(bits, instance.demand)
        loads = np.einsum("p,pit->it", instance.weights, deliveries)
        best: tuple[float, int, int] | None = None
        for i in np.flatnonzero(bits[:, t]):
            e = _window_end(bits[i], t)
            if e - t < 2:
                continue
            key = (-float(loads[i, t]), int(i), t + (e - t) // 2)
            if best is None or key < best:
                best = key
        if best is None:
            return None
        return best[1], best[2]

    # Only C1 remains, which force_first_deliveries already covers.
    return None


__all__ = ["repair", "force_first_deliveries"]
