"""Deliver-every-period comparator."""
from __future__ import annotations

from mmirp_core.models import Instance
from mmirp_routing.evaluate import evaluate_solution
from mmirp_routing.models import Solution
from mmirp_schedule.matrix import ScheduleMatrix


def baseline_direct(instance: Instance) -> Solution:
    """Evaluate the all-ones schedule: every customer served every period, no stock held.

    Raises ``PackingInfeasibleError`` when some period's demand cannot be packed.
    """
    return evaluate_solution(ScheduleMatrix.ones(instance), instance)


__all__ = ["baseline_direct"]
