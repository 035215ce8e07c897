"""Exhaustive search over schedule matrices for small instances."""
from __future__ import annotations

import itertools
from typing import List

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext import current_config
from mmirp_ext.errors import InstanceInfeasibleError, PackingInfeasibleError, SizeLimitError
from mmirp_ext.logging import log_info
from mmirp_routing.evaluate import RouteCache, evaluate_solution
from mmirp_routing.models import Solution
from mmirp_schedule.decode import _decode_arrays
from mmirp_schedule.matrix import ScheduleMatrix

_EPS = 1e-9


def feasible_rows(instance: Instance, customer_pos: int) -> List[np.ndarray]:
    """Rows of one customer that pass the per-customer conditions (coverage, single-vehicle fit, storage).

    Rows are in lexicographic bit order.
    """
    demand = instance.demand[:, customer_pos : customer_pos + 1, :]
    largest = float(instance.capacities.max()) if instance.n_vehicles else 0.0
    storage = float(instance.storage[customer_pos])
    weights = instance.weights
    rows: List[np.ndarray] = []
    for combo in itertools.product((0, 1), repeat=instance.periods):
        row = np.array(combo, dtype=np.uint8)[None, :]
        deliveries, inventory, uncovered = _decode_arrays(row, demand)
        if uncovered:
            continue
        if (weights @ deliveries[:, 0, :] > largest + _EPS).any():
            continue
        if (weights @ inventory[:, 0, :] > storage + _EPS).any():
            continue
        rows.append(row[0])
    return rows


def oracle_enumerate(instance: Instance, *, max_cells: int | None = None) -> Solution:
    """Cheapest schedule of the instance, routes priced with the exact TSP.

    Ties go to the lexicographically smallest schedule. The search covers the
    schedule space only, so the result is not necessarily the optimum of the
    full mixed-integer model.
    """
    limit = max_cells if max_cells is not None else current_config().ORACLE_MAX_CELLS
    cells = instance.n_customers * instance.periods
    if cells > limit:
        raise SizeLimitError(
            user_msg=f"Oracle enumeration supports at most {limit} schedule cells, got {cells}",
            safe_context={"cells": cells, "limit": limit},
        )

    per_customer = [feasible_rows(instance, i) for i in range(instance.n_customers)]
    candidates = int(np.prod([len(rows) for rows in per_customer], dtype=float))
    log_info(
        "Oracle search space pruned",
        component="exact",
        instance_id=instance.name,
        context={"full": 2**cells, "candidates": candidates},
    )

    cache = RouteCache(instance.travel_cost)
    best: Solution | None = None
    for rows in itertools.product(*per_customer):
        bits = np.vstack(rows) if rows else np.zeros((0, instance.periods), dtype=np.uint8)
        try:
            solution = evaluate_solution(ScheduleMatrix(bits), instance, exact_routes=True, route_cache=cache)
        except PackingInfeasibleError:
            continue
        if best is None or solution.total < best.total - _EPS:
            best = solution

    if best is None:
        raise InstanceInfeasibleError(
            user_msg=f"Instance {instance.name} has no feasible schedule",
            safe_context={"instance": instance.name},
        )
    return best


__all__ = ["feasible_rows", "oracle_enumerate"]
