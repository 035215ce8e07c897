"""Shared pytest fixtures."""
from __future__ import annotations

from typing import Sequence

import numpy as np
import pytest

from mmirp_core.generator import generate_instance
from mmirp_core.geometry import travel_cost_matrix
from mmirp_core.models import CustomerSpec, Instance, ProductSpec, VehicleSpec
from mmirp_core.schemas import GenConfig
from mmirp_ext import init_runtime
from mmirp_schedule.matrix import ScheduleMatrix


@pytest.fixture(scope="session", autouse=True)
def runtime():
    return init_runtime("testing")


def build_instance(
    locations: Sequence[tuple[float, float]],
    demand,
    *,
    storage: Sequence[float] | float = 1000.0,
    holding: Sequence[Sequence[float]] | None = None,
    capacities: Sequence[float] = (100.0,),
    fixed_cost: float = 10.0,
    weights: Sequence[float] | None = None,
    supplier: tuple[float, float] = (10.0, 10.0),
    name: str = "hand",
) -> Instance:
    """Instance from plain lists; ``demand`` is indexed (product, customer, period)."""
    demand = np.asarray(demand, dtype=float)
    n_p, n_i, n_t = demand.shape
    weights = tuple(weights) if weights is not None else (1.0,) * n_p
    holding = holding if holding is not None else [[1.0] * n_p for _ in range(n_i)]
    storage = [float(storage)] * n_i if np.isscalar(storage) else list(storage)
    customers = tuple(
        CustomerSpec(id=i + 1, location=tuple(locations[i]), storage_capacity=storage[i], holding_cost=tuple(holding[i]))
        for i in range(n_i)
    )
    vehicles = tuple(
        VehicleSpec(id=v + 1, capacity=float(q), fixed_cost_per_period=(float(fixed_cost),) * n_t)
        for v, q in enumerate(capacities)
    )
    products = tuple(ProductSpec(id=p + 1, weight=float(w)) for p, w in enumerate(weights))
    return Instance(
        customers=customers,
        vehicles=vehicles,
        products=products,
        periods=n_t,
        supplier_location=supplier,
        demand=demand,
        travel_cost=travel_cost_matrix(supplier, [c.location for c in customers]),
        name=name,
    )


@pytest.fixture
def make_instance():
    return build_instance


@pytest.fixture
def explanatory_instance() -> Instance:
    """Four customers, two products (weights 1 and 2), four periods, vehicles of 300 and 400 at fixed cost 10."""
    p1 = [
        [22, 3, 10, 10],
        [50, 50, 50, 50],
        [0, 5, 12, 27],
        [10, 10, 10, 10],
    ]
    p2 = [
        [6, 26, 5, 5],
        [100, 100, 100, 100],
        [0, 4, 0, 12],
        [0, 0, 0, 0],
    ]
    return build_instance(
        locations=[(4.0, 10.0), (16.0, 10.0), (10.0, 16.0), (10.0, 4.0)],
        demand=[p1, p2],
        storage=[100.0, 300.0, 100.0, 15.0],
        holding=[[1.0, 1.0], [1.0, 1.0], [1.0, 2.0], [1.0, 1.0]],
        capacities=(300.0, 400.0),
        fixed_cost=10.0,
        weights=(1.0, 2.0),
        name="explanatory",
    )


@pytest.fixture
def explanatory_schedule() -> ScheduleMatrix:
    return ScheduleMatrix.from_rows(
        [
            [1, 0, 1, 1],
            [1, 1, 1, 1],
            [0, 1, 0, 0],
            [1, 1, 1, 1],
        ]
    )


@pytest.fixture
def tiny_instance():
    """Factory for small generated instances with light demand."""

    def _make(n_customers: int = 3, n_periods: int = 3, seed: int = 1, n_vehicles: int = 2, n_products: int = 2) -> Instance:
        return generate_instance(
            GenConfig(
                n_customers=n_customers,
                n_periods=n_periods,
                n_vehicles=n_vehicles,
                n_products=n_products,
                seed=seed,
                demand_range=(5.0, 20.0),
            )
        )

    return _make
