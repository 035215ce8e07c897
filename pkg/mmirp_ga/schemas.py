"""Validated genetic-algorithm settings."""
from __future__ import annotations

from typing import Any, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mmirp_ext import current_config

Bounds = Tuple[float, float]


class GaConfig(BaseModel):
    psize: int = Field(default=50, ge=2)
    cr0: float = 0.8
    mr0: float = 0.08
    cr_bounds: Bounds = (0.4, 0.95)
    mr_bounds: Bounds = (0.01, 0.3)
    k_max: int = Field(default=50, ge=1)
    max_generations: int = Field(default=500, ge=0)
    seed: int = 0
    exact_routes: bool = False
    routing_capacity_mode: Literal["ffd", "aggregate"] = "ffd"
    log_every: int = Field(default=25, ge=0)

    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("cr_bounds", "mr_bounds")
    @classmethod
    def _check_bounds(cls, value: Bounds) -> Bounds:
        lo, hi = float(value[0]), float(value[1])
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError("rate bounds must satisfy 0 <= lo <= hi <= 1")
        return lo, hi

    @model_validator(mode="after")
    def _rates_within_bounds(self) -> "GaConfig":
        if not self.cr_bounds[0] <= self.cr0 <= self.cr_bounds[1]:
            raise ValueError(f"cr0={self.cr0} outside {self.cr_bounds}")
        if not self.mr_bounds[0] <= self.mr0 <= self.mr_bounds[1]:
            raise ValueError(f"mr0={self.mr0} outside {self.mr_bounds}")
        return self

    @classmethod
    def from_config(cls, config: Any | None = None, **overrides: Any) -> "GaConfig":
        """Defaults from the active configuration class; ``None`` overrides are ignored."""
        cfg = config or current_config()
        values = {
            "psize": cfg.GA_PSIZE,
            "cr0": cfg.GA_CR0,
            "mr0": cfg.GA_MR0,
            "cr_bounds": cfg.GA_CR_BOUNDS,
            "mr_bounds": cfg.GA_MR_BOUNDS,
            "k_max": cfg.GA_K_MAX,
            "max_generations": cfg.GA_MAX_GENERATIONS,
            "seed": cfg.GA_SEED,
            "log_every": cfg.GA_LOG_EVERY,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


__all__ = ["Bounds", "GaConfig"]
