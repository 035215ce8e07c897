"""Random feasible schedules for population seeding."""
from __future__ import annotations

import numpy as np

from mmirp_core.models import Instance
from mmirp_ext import current_config
from mmirp_ext.errors import InstanceInfeasibleError
from mmirp_ext.logging import log_debug
from mmirp_schedule.feasibility import CapacityMode
from mmirp_schedule.matrix import ScheduleMatrix
from mmirp_schedule.repair import repair


def random_schedule(
    instance: Instance,
    rng: np.random.Generator,
    *,
    max_attempts: int | None = None,
    routing_capacity_mode: CapacityMode = "ffd",
) -> ScheduleMatrix:
    """Draw each bit with probability 0.5 and repair; resample dismissed draws."""
    attempts = max_attempts if max_attempts is not None else current_config().RANDOM_SCHEDULE_MAX_ATTEMPTS
    for attempt in range(1, attempts + 1):
        bits = (rng.random(instance.shape) < 0.5).astype(np.uint8)
        repaired = repair(ScheduleMatrix(bits), instance, routing_capacity_mode)
        if repaired is not None:
            if attempt > 1:
                log_debug("Random schedule needed resampling", component="schedule", instance_id=instance.name, context={"attempts": attempt})
            return repaired
    raise InstanceInfeasibleError(
        user_msg=f"No feasible schedule found for {instance.name} after {attempts} random draws",
        safe_context={"instance": instance.name, "attempts": attempts},
    )


__all__ = ["random_schedule"]
