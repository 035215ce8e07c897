"""Chromosome encoding, decoding, feasibility and repair."""
from __future__ import annotations

from mmirp_schedule.matrix import ScheduleMatrix
from mmirp_schedule.decode import DeliveryPlan, decode, weighted_inventory, weighted_loads
from mmirp_schedule.cost import holding_cost_by_lag, inventory_cost
from mmirp_schedule.feasibility import FeasibilityReport, ScheduleViolation, check_feasibility
from mmirp_schedule.repair import repair
from mmirp_schedule.sampling import random_schedule

__all__ = [
    "DeliveryPlan",
    "FeasibilityReport",
    "ScheduleMatrix",
    "ScheduleViolation",
    "check_feasibility",
    "decode",
    "holding_cost_by_lag",
    "inventory_cost",
    "random_schedule",
    "repair",
    "weighted_inventory",
    "weighted_loads",
]
