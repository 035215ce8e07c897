"""Routing and solution value objects."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Dict, Tuple

from mmirp_ext.errors import ValidationError

if TYPE_CHECKING:
    from mmirp_schedule.decode import DeliveryPlan
    from mmirp_schedule.matrix import ScheduleMatrix


@dataclass(frozen=True, slots=True)
class Route:
    """Customer node ids in visiting order; the supplier (node 0) closes both ends."""

    stops: Tuple[int, ...] = ()
    cost: float = 0.0

    def __post_init__(self) -> None:
        stops = tuple(int(s) for s in self.stops)
        if len(set(stops)) != len(stops):
            raise ValidationError(user_msg=f"Route repeats a stop: {stops}")
        if 0 in stops:
            raise ValidationError(user_msg="Route stops must not include the supplier")
        object.__setattr__(self, "stops", stops)

    @property
    def nodes(self) -> Tuple[int, ...]:
        return (0, *self.stops, 0) if self.stops else ()

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        nodes = self.nodes
        return tuple(zip(nodes[:-1], nodes[1:]))


@dataclass(frozen=True, slots=True)
class VehicleRoute:
    vehicle: int
    route: Route
    load: float


@dataclass(frozen=True)
class PeriodRouting:
    """Vehicle assignments of one period; ``routed`` is False for a packing skeleton."""

    period: int
    assignments: Dict[int, VehicleRoute] = field(default_factory=dict)
    fixed_cost: float = 0.0
    routed: bool = False

    @property
    def transport_cost(self) -> float:
        return float(sum(a.route.cost for a in self.assignments.values()))

    @property
    def customers(self) -> Tuple[int, ...]:
        return tuple(sorted(s for a in self.assignments.values() for s in a.route.stops))

    def with_routes(self, routes: Dict[int, Route]) -> "PeriodRouting":
        assignments = {v: replace(a, route=routes[v]) for v, a in self.assignments.items()}
        return replace(self, assignments=assignments, routed=True)


@dataclass(frozen=True, slots=True)
class CostBreakdown:
    fleet_fixed: float
    transport: float
    inventory: float
    total: float

    @classmethod
    def of(cls, fleet_fixed: float, transport: float, inventory: float) -> "CostBreakdown":
        return cls(
            fleet_fixed=float(fleet_fixed),
            transport=float(transport),
            inventory=float(inventory),
            total=float(fleet_fixed) + float(transport) + float(inventory),
        )

    def as_dict(self) -> Dict[str, float]:
        return {"fleet_fixed": self.fleet_fixed, "transport": self.transport, "inventory": self.inventory, "total": self.total}


@dataclass(frozen=True)
class Solution:
    schedule: ScheduleMatrix
    plan: DeliveryPlan
    routing: Tuple[PeriodRouting, ...]
    cost: CostBreakdown

    @property
    def total(self) -> float:
        return self.cost.total

    def period_fixed_cost(self, period: int) -> float:
        return self.routing[period - 1].fixed_cost


__all__ = ["Route", "VehicleRoute", "PeriodRouting", "CostBreakdown", "Solution"]
