"""Feedback control of crossover and mutation rates."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Tuple

from mmirp_ext.errors import DomainError

RATIO_THRESHOLD = 0.1
CR_STEP = 0.05
MR_STEP = 0.005
# Lets ratios such as 110/100 - 1 land on the threshold.
_SLACK = 1e-12


def _clamp(value: float, bounds: Tuple[float, float]) -> float:
    return min(max(value, bounds[0]), bounds[1])


@dataclass(frozen=True)
class AdaptiveRates:
    cr: float
    mr: float
    cr_bounds: Tuple[float, float] = (0.4, 0.95)
    mr_bounds: Tuple[float, float] = (0.01, 0.3)
    history: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "cr", _clamp(float(self.cr), self.cr_bounds))
        object.__setattr__(self, "mr", _clamp(float(self.mr), self.mr_bounds))


def adapt_rates(rates: AdaptiveRates, mean_parent_fitness: float, mean_offspring_fitness: float) -> AdaptiveRates:
    """Reinforce both operators when offspring beat parents by 10 %, weaken them when they lose by 10 %."""
    if mean_parent_fitness <= 0 or mean_offspring_fitness <= 0:
        raise DomainError(
            user_msg="Rate adaptation needs positive mean fitness values",
            safe_context={"parent": mean_parent_fitness, "offspring": mean_offspring_fitness},
        )
    ratio = mean_parent_fitness / mean_offspring_fitness - 1.0
    if ratio >= RATIO_THRESHOLD - _SLACK:
        direction = 1
    elif ratio <= -RATIO_THRESHOLD + _SLACK:
        direction = -1
    else:
        direction = 0
    return replace(
        rates,
        cr=rates.cr + direction * CR_STEP,
        mr=rates.mr + direction * MR_STEP,
        history=rates.history + ((float(mean_parent_fitness), float(mean_offspring_fitness)),),
    )


__all__ = ["AdaptiveRates", "adapt_rates", "CR_STEP", "MR_STEP", "RATIO_THRESHOLD"]
