"""Benchmark suite definition: the size grid replicated over seeds."""
from __future__ import annotations

from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from mmirp_core.generator import (
    GRID_CUSTOMERS,
    GRID_PERIODS,
    GRID_PRODUCTS,
    GRID_VEHICLES,
    benchmark_grid,
)
from mmirp_core.schemas import GenConfig
from mmirp_ext import current_config


class SuiteConfig(BaseModel):
    customers: Tuple[int, ...] = GRID_CUSTOMERS
    periods: Tuple[int, ...] = GRID_PERIODS
    vehicles: Tuple[int, ...] = GRID_VEHICLES
    products: Tuple[int, ...] = GRID_PRODUCTS
    seeds: Tuple[int, ...] = Field(default_factory=lambda: tuple(current_config().BENCH_SEEDS))
    generator: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("customers", "periods", "vehicles", "products", "seeds")
    @classmethod
    def _non_empty(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value:
            raise ValueError("grid axes must not be empty")
        if len(set(value)) != len(value):
            raise ValueError("grid axes must not repeat values")
        return tuple(value)

    def entries(self) -> List[GenConfig]:
        return list(
            benchmark_grid(
                customers=self.customers,
                periods=self.periods,
                vehicles=self.vehicles,
                products=self.products,
                seeds=self.seeds,
                **self.generator,
            )
        )

    @property
    def n_configurations(self) -> int:
        return len(self.customers) * len(self.periods) * len(self.vehicles) * len(self.products)


__all__ = ["SuiteConfig"]
