"""Roulette selection and matrix crossover / mutation."""
from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext.errors import DegeneratePopulationError, DomainError
from mmirp_schedule.feasibility import CapacityMode
from mmirp_schedule.matrix import ScheduleMatrix
from mmirp_schedule.repair import repair

ROW_AXIS = 0
COLUMN_AXIS = 1


def selection_probabilities(fitness: Sequence[float]) -> np.ndarray:
    """p_c = (F - f_c) / (F (psize - 1)) with F the population's total cost.

    Lower cost gets the larger share; the shares sum to one.
    """
    values = np.asarray(fitness, dtype=float)
    if values.size < 2:
        raise DegeneratePopulationError(user_msg=f"Roulette selection needs at least two members, got {values.size}")
    if (values <= 0).any():
        raise DomainError(user_msg="Roulette selection requires strictly positive fitness values")
    total = values.sum()
    return (total - values) / (total * (values.size - 1))


def select(fitness: Sequence[float], rng: np.random.Generator) -> int:
    """Index c of the first cumulative share g_c with g_{c-1} < r <= g_c, r uniform on (0, 1]."""
    cumulative = np.cumsum(selection_probabilities(fitness))
    r = 1.0 - rng.random()
    index = int(np.searchsorted(cumulative, r, side="left"))
    return min(index, cumulative.size - 1)


def swap_slices_between(a: ScheduleMatrix, b: ScheduleMatrix, axis: int, index: int) -> Tuple[ScheduleMatrix, ScheduleMatrix]:
    if a.shape != b.shape:
        raise DomainError(user_msg=f"Parents differ in shape: {a.shape} vs {b.shape}")
    child_a, child_b = a.bits.copy(), b.bits.copy()
    if axis == ROW_AXIS:
        child_a[index, :], child_b[index, :] = b.bits[index, :], a.bits[index, :]
    else:
        child_a[:, index], child_b[:, index] = b.bits[:, index], a.bits[:, index]
    return ScheduleMatrix(child_a), ScheduleMatrix(child_b)


def swap_slices(m: ScheduleMatrix, axis: int, first: int, second: int) -> ScheduleMatrix:
    bits = m.bits.copy()
    if axis == ROW_AXIS:
        bits[[first, second], :] = bits[[second, first], :]
    else:
        bits[:, [first, second]] = bits[:, [second, first]]
    return ScheduleMatrix(bits)


def crossover(
    parent_a: ScheduleMatrix,
    parent_b: ScheduleMatrix,
    rng: np.random.Generator,
    *,
    instance: Instance,
    routing_capacity_mode: CapacityMode = "ffd",
) -> Tuple[ScheduleMatrix | None, ScheduleMatrix | None]:
    """Exchange one random row or column; dismissed children come back as None."""
    axis = int(rng.integers(2))
    index = int(rng.integers(parent_a.shape[axis]))
    raw_a, raw_b = swap_slices_between(parent_a, parent_b, axis, index)
    return repair(raw_a, instance, routing_capacity_mode), repair(raw_b, instance, routing_capacity_mode)


def mutate(
    parent: ScheduleMatrix,
    rng: np.random.Generator,
    *,
    instance: Instance,
    routing_capacity_mode: CapacityMode = "ffd",
) -> ScheduleMatrix | None:
    """Swap two distinct rows or columns, then repair.

    An axis with a single slice cannot be chosen; a 1×1 matrix is returned as is.
    """
    axes = [axis for axis in (ROW_AXIS, COLUMN_AXIS) if parent.shape[axis] >= 2]
    if not axes:
        return repair(parent, instance, routing_capacity_mode)
    axis = axes[int(rng.integers(len(axes)))]
    first, second = (int(k) for k in rng.choice(parent.shape[axis], size=2, replace=False))
    return repair(swap_slices(parent, axis, first, second), instance, routing_capacity_mode)


__all__ = [
    "COLUMN_AXIS",
    "ROW_AXIS",
    "crossover",
    "mutate",
    "select",
    "selection_probabilities",
    "swap_slices",
    "swap_slices_between",
]
