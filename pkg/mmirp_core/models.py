"""Immutable problem-instance data model.

Identifiers are 1-based throughout the public surface: customer ``c`` is
node ``c`` of the travel-cost matrix (node 0 is the supplier), vehicle
``v`` and product ``p`` are listed in id order, and periods run 1..T.
Array positions are the id minus one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

Point = Tuple[float, float]


@dataclass(frozen=True, slots=True)
class ProductSpec:
    id: int
    weight: float


@dataclass(frozen=True, slots=True)
class VehicleSpec:
    id: int
    capacity: float
    fixed_cost_per_period: Tuple[float, ...]

    def fixed_cost(self, period: int) -> float:
        """Fixed cost f_t^v for a 1-based period."""
        return self.fixed_cost_per_period[period - 1]

    @property
    def constant_fixed_cost(self) -> bool:
        return len(set(self.fixed_cost_per_period)) <= 1


@dataclass(frozen=True, slots=True)
class CustomerSpec:
    id: int
    location: Point
    storage_capacity: float
    holding_cost: Tuple[float, ...]


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Instance:
    """Problem data; ``demand`` is indexed (product, customer, period)."""

    customers: Tuple[CustomerSpec, ...]
    vehicles: Tuple[VehicleSpec, ...]
    products: Tuple[ProductSpec, ...]
    periods: int
    supplier_location: Point
    demand: np.ndarray
    travel_cost: np.ndarray
    name: str = "instance"
    grid_size: float = 20.0
    seed: int | None = None
    _derived: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "customers", tuple(self.customers))
        object.__setattr__(self, "vehicles", tuple(self.vehicles))
        object.__setattr__(self, "products", tuple(self.products))
        object.__setattr__(self, "supplier_location", (float(self.supplier_location[0]), float(self.supplier_location[1])))
        object.__setattr__(self, "demand", _frozen(self.demand))
        object.__setattr__(self, "travel_cost", _frozen(self.travel_cost))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and self.periods == other.periods
            and self.grid_size == other.grid_size
            and self.seed == other.seed
            and self.supplier_location == other.supplier_location
            and self.customers == other.customers
            and self.vehicles == other.vehicles
            and self.products == other.products
            and self.demand.shape == other.demand.shape
            and bool(np.array_equal(self.demand, other.demand))
            and self.travel_cost.shape == other.travel_cost.shape
            and bool(np.array_equal(self.travel_cost, other.travel_cost))
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def n_customers(self) -> int:
        return len(self.customers)

    @property
    def n_vehicles(self) -> int:
        return len(self.vehicles)

    @property
    def n_products(self) -> int:
        return len(self.products)

    @property
    def shape(self) -> Tuple[int, int]:
        """Chromosome shape (|I|, |T|)."""
        return self.n_customers, self.periods

    def _cached(self, key: str, build) -> np.ndarray:
        value = self._derived.get(key)
        if value is None:
            value = _frozen(build())
            self._derived[key] = value
        return value

    @property
    def weights(self) -> np.ndarray:
        return self._cached("weights", lambda: [p.weight for p in self.products])

    @property
    def capacities(self) -> np.ndarray:
        return self._cached("capacities", lambda: [v.capacity for v in self.vehicles])

    @property
    def fixed_costs(self) -> np.ndarray:
        """Fixed costs as a (V, T) array."""
        return self._cached(
            "fixed_costs",
            lambda: np.array([v.fixed_cost_per_period for v in self.vehicles], dtype=float).reshape(self.n_vehicles, self.periods),
        )

    @property
    def storage(self) -> np.ndarray:
        return self._cached("storage", lambda: [c.storage_capacity for c in self.customers])

    @property
    def holding(self) -> np.ndarray:
        """Holding costs as an (I, P) array."""
        return self._cached(
            "holding",
            lambda: np.array([c.holding_cost for c in self.customers], dtype=float).reshape(self.n_customers, self.n_products),
        )

    @property
    def locations(self) -> np.ndarray:
        return self._cached(
            "locations",
            lambda: np.array([c.location for c in self.customers], dtype=float).reshape(self.n_customers, 2),
        )

    @property
    def weighted_demand(self) -> np.ndarray:
        """Σ_p α^p d^p_{i,t} as an (I, T) array."""
        return self._cached("weighted_demand", lambda: np.einsum("p,pit->it", self.weights, self.demand))


__all__ = ["Point", "ProductSpec", "VehicleSpec", "CustomerSpec", "Instance"]
