"""Instance invariant checks returning violations as data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from mmirp_core.models import Instance

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Violation:
    field: str
    index: tuple
    condition: str
    severity: str = SEVERITY_ERROR

    def __str__(self) -> str:
        where = ",".join(str(i) for i in self.index)
        return f"{self.field}[{where}]: {self.condition}"


def validate_instance(instance: Instance) -> List[Violation]:
    """Return every invariant violation; an empty list means the instance is valid."""
    found: List[Violation] = []
    n_i, n_t, n_p, n_v = instance.n_customers, instance.periods, instance.n_products, instance.n_vehicles

    if n_t <= 0:
        found.append(Violation("periods", (), "periods must be positive"))
    for pos, product in enumerate(instance.products):
        if product.id != pos + 1:
            found.append(Violation("products", (pos,), "ids must be 1..P in order"))
        if not product.weight > 0:
            found.append(Violation("products.weight", (product.id,), "weight must be positive"))
    for pos, vehicle in enumerate(instance.vehicles):
        if vehicle.id != pos + 1:
            found.append(Violation("vehicles", (pos,), "ids must be 1..V in order"))
        if not vehicle.capacity > 0:
            found.append(Violation("vehicles.capacity", (vehicle.id,), "capacity must be positive"))
        if len(vehicle.fixed_cost_per_period) != n_t:
            found.append(Violation("vehicles.fixed_cost", (vehicle.id,), "one fixed cost per period required"))
        elif any(cost < 0 for cost in vehicle.fixed_cost_per_period):
            found.append(Violation("vehicles.fixed_cost", (vehicle.id,), "negative fixed cost"))
    grid = instance.grid_size
    for pos, customer in enumerate(instance.customers):
        if customer.id != pos + 1:
            found.append(Violation("customers", (pos,), "ids must be 1..I in order"))
        if customer.storage_capacity < 0:
            found.append(Violation("customers.storage", (customer.id,), "negative storage capacity"))
        if len(customer.holding_cost) != n_p:
            found.append(Violation("customers.holding_cost", (customer.id,), "one holding cost per product required"))
        elif any(h < 0 for h in customer.holding_cost):
            found.append(Violation("customers.holding_cost", (customer.id,), "negative holding cost"))
        x, y = customer.location
        if not (0.0 <= x <= grid and 0.0 <= y <= grid):
            found.append(Violation("customers.location", (customer.id,), "location outside grid bounds"))

    demand = instance.demand
    if demand.shape != (n_p, n_i, n_t):
        found.append(Violation("demand", (), f"dimension mismatch: expected {(n_p, n_i, n_t)}, got {demand.shape}"))
    else:
        for p, i, t in zip(*np.nonzero(demand < 0)):
            found.append(Violation("demand", (int(p) + 1, int(i) + 1, int(t) + 1), "negative demand"))

    found.extend(_cost_matrix_violations(instance.travel_cost, n_i + 1))

    if not found and n_v:
        found.extend(_fleet_warnings(instance))
    return found


def _cost_matrix_violations(cost: np.ndarray, n_nodes: int) -> List[Violation]:
    if cost.shape != (n_nodes, n_nodes):
        return [Violation("travel_cost", (), f"dimension mismatch: expected {(n_nodes, n_nodes)}, got {cost.shape}")]
    found: List[Violation] = []
    for i, j in zip(*np.nonzero(cost < 0)):
        found.append(Violation("travel_cost", (int(i), int(j)), "negative cost"))
    for i in np.flatnonzero(np.diag(cost) != 0):
        found.append(Violation("travel_cost", (int(i), int(i)), "nonzero diagonal"))
    asym = np.abs(cost - cost.T) > _TOL
    for i, j in zip(*np.nonzero(np.triu(asym, k=1))):
        found.append(Violation("travel_cost", (int(i), int(j)), "asymmetric cost"))
    if not found and n_nodes > 2:
        # c[i,j] <= c[i,k] + c[k,j] for every k
        via = cost[:, :, None] + cost[None, :, :]
        shortcut = via.min(axis=1)
        for i, j in zip(*np.nonzero(cost - shortcut > _TOL * max(1.0, float(cost.max())))):
            found.append(Violation("travel_cost", (int(i), int(j)), "triangle inequality violated"))
    return found


def _fleet_warnings(instance: Instance) -> List[Violation]:
    found: List[Violation] = []
    fleet = float(instance.capacities.sum())
    largest = float(instance.capacities.max())
    per_period = instance.weighted_demand.sum(axis=0)
    for t in np.flatnonzero(per_period > fleet + _TOL):
        found.append(
            Violation("demand", (int(t) + 1,), f"fleet capacity infeasible: weighted demand {per_period[t]:.6g} > {fleet:.6g}", SEVERITY_WARNING)
        )
    for i, t in zip(*np.nonzero(instance.weighted_demand > largest + _TOL)):
        found.append(
            Violation("demand", (int(i) + 1, int(t) + 1), "single-period load exceeds every vehicle", SEVERITY_WARNING)
        )
    return found


def errors_only(violations: List[Violation]) -> List[Violation]:
    return [v for v in violations if v.severity == SEVERITY_ERROR]


__all__ = ["Violation", "validate_instance", "errors_only", "SEVERITY_ERROR", "SEVERITY_WARNING"]
