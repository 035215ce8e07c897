"""Per-period assignment of customer loads to vehicles.

First-fit decreasing places the loads; when it strands a customer, an exact
depth-first search over vehicles decides whether any single-vehicle
assignment exists before the period is declared unpackable.
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Sequence, Set, Tuple

from mmirp_core.models import VehicleSpec
from mmirp_ext.errors import PackingInfeasibleError
from mmirp_ext.logging import log_warn
from mmirp_routing.models import PeriodRouting, Route, VehicleRoute

_EPS = 1e-9
SEARCH_NODE_LIMIT = 200_000

Placement = Dict[int, List[int]]


class _SearchExhausted(Exception):
    pass


def _first_fit_decreasing(order: Sequence[Tuple[int, float]], vehicles: Sequence[VehicleSpec], period: int) -> Placement | None:
    remaining: Dict[int, float] = {}
    placed: Placement = {}
    for customer, load in order:
        open_fits = [vid for vid, free in remaining.items() if free + _EPS >= load]
        if open_fits:
            vid = min(open_fits, key=lambda v: (remaining[v], v))
        else:
            closed = [v for v in vehicles if v.id not in remaining and v.capacity + _EPS >= load]
            if not closed:
                return None
            vid = min(closed, key=lambda v: (v.fixed_cost(period), v.id)).id
            remaining[vid] = next(v.capacity for v in vehicles if v.id == vid)
            placed[vid] = []
        remaining[vid] -= load
        placed[vid].append(customer)
    return placed


def _exact_packing(order: Sequence[Tuple[int, float]], vehicles: Sequence[VehicleSpec], period: int) -> Placement | None:
    """Depth-first search for any assignment; open vehicles are tried before unopened ones.

    Vehicles with equal free room are interchangeable for feasibility, so only
    one of them is tried per level, and failed (depth, free-room multiset)
    states are remembered.
    """
    fleet = sorted(vehicles, key=lambda v: (v.fixed_cost(period), v.id))
    free = {v.id: v.capacity for v in fleet}
    placed: Placement = {v.id: [] for v in fleet}
    failed: Set[Tuple[int, Tuple[float, ...]]] = set()
    visited = 0

    def place(k: int) -> bool:
        nonlocal visited
        if k == len(order):
            return True
        state = (k, tuple(sorted(round(room, 9) for room in free.values())))
        if state in failed:
            return False
        visited += 1
        if visited > SEARCH_NODE_LIMIT:
            raise _SearchExhausted
        customer, load = order[k]
        tried: Set[float] = set()
        for veh in sorted(fleet, key=lambda v: (not placed[v.id], v.fixed_cost(period), v.id)):
            room = round(free[veh.id], 9)
            if room + _EPS < load or room in tried:
                continue
            tried.add(room)
            free[veh.id] -= load
            placed[veh.id].append(customer)
            if place(k + 1):
                return True
            free[veh.id] += load
            placed[veh.id].pop()
        failed.add(state)
        return False

    try:
        found = place(0)
    except _SearchExhausted:
        log_warn(
            "Packing search gave up",
            component="routing",
            context={"period": period, "customers": len(order), "limit": SEARCH_NODE_LIMIT},
        )
        return None
    return {vid: stops for vid, stops in placed.items() if stops} if found else None


def assign_vehicles(loads: Mapping[int, float], vehicles: Sequence[VehicleSpec], period: int) -> PeriodRouting:
    """Place every customer load on a single vehicle.

    Loads are taken largest first (ties by customer id). Each goes to the
    open vehicle with the least remaining capacity that still fits; if none
    fits, the unopened vehicle with the smallest fixed cost for ``period``
    that can carry it is opened (ties by vehicle id). If that strands a
    load, the exact search is run instead. Route stops in the returned
    skeleton are in placement order and carry no cost yet.
    """
    if not loads:
        return PeriodRouting(period=period, assignments={}, fixed_cost=0.0, routed=True)
    if not vehicles:
        raise PackingInfeasibleError(user_msg=f"Period {period} has loads but the fleet is empty")

    largest = max(v.capacity for v in vehicles)
    for customer, load in sorted(loads.items()):
        if load > largest + _EPS:
            raise PackingInfeasibleError(
                user_msg=f"Load {load:.6g} of customer {customer} in period {period} exceeds every vehicle capacity",
                safe_context={"customer": customer, "period": period, "load": load},
            )
    total = float(sum(loads.values()))
    fleet = float(sum(v.capacity for v in vehicles))
    if total > fleet + _EPS:
        raise PackingInfeasibleError(
            user_msg=f"Total load {total:.6g} in period {period} exceeds fleet capacity {fleet:.6g}",
            safe_context={"period": period, "load": total},
        )

    order = sorted(loads.items(), key=lambda item: (-item[1], item[0]))
    placed = _first_fit_decreasing(order, vehicles, period)
    if placed is None:
        placed = _exact_packing(order, vehicles, period)
    if placed is None:
        raise PackingInfeasibleError(
            user_msg=f"No single-vehicle assignment fits the loads of period {period}",
            safe_context={"period": period, "load": total},
        )

    by_id = {v.id: v for v in vehicles}
    assignments = {
        vid: VehicleRoute(
            vehicle=vid,
            route=Route(stops=tuple(placed[vid]), cost=0.0),
            load=float(sum(loads[c] for c in placed[vid])),
        )
        for vid in sorted(placed)
    }
    fixed = float(sum(by_id[vid].fixed_cost(period) for vid in assignments))
    return PeriodRouting(period=period, assignments=assignments, fixed_cost=fixed, routed=False)


__all__ = ["SEARCH_NODE_LIMIT", "assign_vehicles"]
