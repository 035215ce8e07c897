"""Problem-instance data model, generation and file I/O."""
from __future__ import annotations

from mmirp_core.generator import benchmark_grid, generate_instance, size_parameters
from mmirp_core.geometry import travel_cost_matrix
from mmirp_core.io import instance_io, read_instance, write_instance
from mmirp_core.models import CustomerSpec, Instance, ProductSpec, VehicleSpec
from mmirp_core.schemas import GenConfig
from mmirp_core.validation import Violation, validate_instance

__all__ = [
    "CustomerSpec",
    "GenConfig",
    "Instance",
    "ProductSpec",
    "VehicleSpec",
    "Violation",
    "generate_instance",
    "instance_io",
    "read_instance",
    "benchmark_grid",
    "size_parameters",
    "travel_cost_matrix",
    "validate_instance",
    "write_instance",
]
