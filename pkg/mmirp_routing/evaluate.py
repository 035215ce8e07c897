"""Full objective evaluation of a schedule (the GA fitness)."""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from mmirp_core.models import Instance
from mmirp_routing.models import CostBreakdown, PeriodRouting, Route, Solution
from mmirp_routing.packing import assign_vehicles
from mmirp_routing.tsp import solve_route, tsp_exact
from mmirp_schedule.cost import inventory_cost
from mmirp_schedule.decode import decode, weighted_loads
from mmirp_schedule.matrix import ScheduleMatrix


class RouteCache:
    """Routes memoized by stop set for one cost matrix.

    The heuristic and exact solvers are cached separately; the cache must not
    be shared between instances.
    """

    def __init__(self, cost_matrix: np.ndarray) -> None:
        self.cost_matrix = cost_matrix
        self._routes: Dict[Tuple[FrozenSet[int], bool], Route] = {}
        self.hits = 0
        self.misses = 0

    def route(self, stops: Sequence[int], *, exact: bool = False) -> Route:
        key = (frozenset(stops), exact)
        cached = self._routes.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        solver = tsp_exact if exact else solve_route
        route = solver(sorted(key[0]), self.cost_matrix)
        self._routes[key] = route
        return route

    def __len__(self) -> int:
        return len(self._routes)


def evaluate_solution(
    schedule: ScheduleMatrix,
    instance: Instance,
    *,
    exact_routes: bool = False,
    route_cache: RouteCache | None = None,
) -> Solution:
    """Decode, pack, route and price ``schedule``.

    Every scheduled customer-period is visited, even one whose delivery is
    empty. Raises ``InfeasibleDecodeError`` or ``PackingInfeasibleError``
    when the schedule cannot be served.
    """
    plan = decode(schedule, instance)
    loads = weighted_loads(plan, instance)
    cache = route_cache if route_cache is not None else RouteCache(instance.travel_cost)
    bits = schedule.bits

    periods: List[PeriodRouting] = []
    for t in range(instance.periods):
        served = np.flatnonzero(bits[:, t])
        period_loads = {int(i) + 1: float(loads[i, t]) for i in served}
        skeleton = assign_vehicles(period_loads, instance.vehicles, t + 1)
        routes = {
            vid: cache.route(assignment.route.stops, exact=exact_routes)
            for vid, assignment in skeleton.assignments.items()
        }
        periods.append(skeleton.with_routes(routes))

    fleet_fixed = sum(p.fixed_cost for p in periods)
    transport = sum(p.transport_cost for p in periods)
    cost = CostBreakdown.of(fleet_fixed, transport, inventory_cost(plan, instance))
    return Solution(schedule=schedule, plan=plan, routing=tuple(periods), cost=cost)


__all__ = ["RouteCache", "evaluate_solution"]
