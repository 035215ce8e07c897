"""Random instance generation over the benchmark size grid."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Iterator, Tuple

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from mmirp_core.geometry import travel_cost_matrix
from mmirp_core.models import CustomerSpec, Instance, ProductSpec, VehicleSpec
from mmirp_core.schemas import GenConfig
from mmirp_ext.errors import ValidationError

GRID_CUSTOMERS: Tuple[int, ...] = (5, 10, 20, 30)
GRID_PERIODS: Tuple[int, ...] = (5, 7)
GRID_VEHICLES: Tuple[int, ...] = (3, 5)
GRID_PRODUCTS: Tuple[int, ...] = (2, 5)

_WEIGHTS = {
    2: (1.0, 2.0),
    5: (0.25, 0.75, 1.0, 1.5, 2.5),
}
_CAPACITY_PER_CUSTOMER = {2: 50.0, 5: 100.0}
_STORAGE = {2: 300.0, 5: 500.0}


@dataclass(frozen=True, slots=True)
class SizeParameters:
    base_capacity: float
    storage: float
    weights: Tuple[float, ...]


def _interpolate(table: dict[int, float], n_products: int) -> float:
    lo, hi = table[2], table[5]
    share = (max(n_products, 2) - 2) / 3.0
    return lo + (hi - lo) * share


def size_parameters(n_customers: int, n_products: int) -> SizeParameters:
    """Capacity base, storage and product weights for one grid column.

    |P| = 2 and |P| = 5 use the reference columns; other counts interpolate the
    per-customer capacity and storage linearly in |P| and spread weights
    evenly over [0.25, 2.5].
    """
    if n_products in _WEIGHTS:
        weights = _WEIGHTS[n_products]
        per_customer = _CAPACITY_PER_CUSTOMER[n_products]
        storage = _STORAGE[n_products]
    else:
        if n_products == 1:
            weights = (1.0,)
        else:
            weights = tuple(float(round(w, 4)) for w in np.linspace(0.25, 2.5, n_products))
        per_customer = _interpolate(_CAPACITY_PER_CUSTOMER, n_products)
        storage = _interpolate(_STORAGE, n_products)
    return SizeParameters(base_capacity=n_customers * per_customer, storage=storage, weights=weights)


def generate_instance(config: GenConfig) -> Instance:
    """Build a deterministic instance from ``config`` (seeded numpy generator)."""
    if not isinstance(config, GenConfig):
        try:
            config = GenConfig.model_validate(config)
        except PydanticValidationError as exc:
            raise ValidationError(user_msg="Invalid generation config", detail=str(exc)) from exc

    rng = np.random.default_rng(config.seed % (2**64))
    params = size_parameters(config.n_customers, config.n_products)
    n_i, n_t, n_v, n_p = config.n_customers, config.n_periods, config.n_vehicles, config.n_products

    grid = config.grid_size
    supplier = (grid / 2.0, grid / 2.0)
    locations = rng.uniform(0.0, grid, size=(n_i, 2))

    lo, hi = config.demand_range
    if config.integer_demand:
        demand = rng.integers(int(np.ceil(lo)), int(np.floor(hi)) + 1, size=(n_p, n_i, n_t)).astype(float)
    else:
        demand = rng.uniform(lo, hi, size=(n_p, n_i, n_t))

    holding = rng.uniform(*config.holding_cost_range, size=(n_i, n_p))
    f_lo, f_hi = config.fixed_cost_range
    fixed = rng.integers(int(np.ceil(f_lo)), int(np.floor(f_hi)) + 1, size=n_v).astype(float)

    factors = np.linspace(*config.capacity_spread, n_v) if n_v > 1 else np.array([1.0])

    products = tuple(ProductSpec(id=p + 1, weight=float(w)) for p, w in enumerate(params.weights))
    vehicles = tuple(
        VehicleSpec(
            id=v + 1,
            capacity=float(params.base_capacity * factors[v]),
            fixed_cost_per_period=tuple(float(fixed[v]) for _ in range(n_t)),
        )
        for v in range(n_v)
    )
    customers = tuple(
        CustomerSpec(
            id=i + 1,
            location=(float(locations[i, 0]), float(locations[i, 1])),
            storage_capacity=float(params.storage),
            holding_cost=tuple(float(h) for h in holding[i]),
        )
        for i in range(n_i)
    )
    return Instance(
        customers=customers,
        vehicles=vehicles,
        products=products,
        periods=n_t,
        supplier_location=supplier,
        demand=demand,
        travel_cost=travel_cost_matrix(supplier, [c.location for c in customers]),
        name=config.instance_id,
        grid_size=float(grid),
        seed=config.seed,
    )


def benchmark_grid(
    customers: Iterable[int] = GRID_CUSTOMERS,
    periods: Iterable[int] = GRID_PERIODS,
    vehicles: Iterable[int] = GRID_VEHICLES,
    products: Iterable[int] = GRID_PRODUCTS,
    seeds: Iterable[int] = (1, 2, 3),
    **overrides,
) -> Iterator[GenConfig]:
    """Yield one GenConfig per (|I|, |T|, |V|, |P|, seed) combination."""
    seeds = tuple(seeds)
    for n_i, n_t, n_v, n_p in cartesian(tuple(customers), tuple(periods), tuple(vehicles), tuple(products)):
        for seed in seeds:
            yield GenConfig(n_customers=n_i, n_periods=n_t, n_vehicles=n_v, n_products=n_p, seed=seed, **overrides)


def generate_suite(**grid) -> Iterator[Instance]:
    for config in benchmark_grid(**grid):
        yield generate_instance(config)


__all__ = [
    "SizeParameters",
    "size_parameters",
    "generate_instance",
    "benchmark_grid",
    "generate_suite",
    "GRID_CUSTOMERS",
    "GRID_PERIODS",
    "GRID_VEHICLES",
    "GRID_PRODUCTS",
]
