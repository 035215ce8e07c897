"""Pydantic schemas for instance generation."""
from __future__ import annotations

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Range = Tuple[float, float]


class GenConfig(BaseModel):
    """Parameters of one generated instance (one cell of the benchmark grid)."""

    n_customers: int = Field(gt=0)
    n_periods: int = Field(gt=0)
    n_vehicles: int = Field(gt=0)
    n_products: int = Field(gt=0)
    seed: int = Field(default=1, ge=-(2**63), lt=2**64)
    grid_size: float = Field(default=20.0, gt=0)
    demand_range: Range = (10.0, 50.0)
    holding_cost_range: Range = (1.0, 5.0)
    fixed_cost_range: Range = (10.0, 30.0)
    integer_demand: bool = True
    capacity_spread: Range = (0.8, 1.2)

    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("demand_range", "holding_cost_range", "fixed_cost_range", "capacity_spread")
    @classmethod
    def _check_range(cls, value: Range) -> Range:
        lo, hi = float(value[0]), float(value[1])
        if lo < 0 or hi < 0:
            raise ValueError("ranges must be nonnegative")
        if lo > hi:
            raise ValueError("range lower bound exceeds upper bound")
        return lo, hi

    @model_validator(mode="after")
    def _check_spread(self) -> "GenConfig":
        if self.capacity_spread[0] <= 0:
            raise ValueError("capacity_spread must be positive")
        return self

    @property
    def instance_id(self) -> str:
        return f"I{self.n_customers}-T{self.n_periods}-V{self.n_vehicles}-P{self.n_products}-s{self.seed}"


__all__ = ["GenConfig", "Range"]
