"""Antenna constellations and array-structure phases."""

from .constellations import build_array, grid_params, virtual_positions
from .phase import compute_beta, channel_betas
from .conditions import ConditionReport, check_recovery_conditions
from .array_io import format_array, write_array, read_array

__all__ = [
    "build_array",
    "grid_params",
    "virtual_positions",
    "compute_beta",
    "channel_betas",
    "ConditionReport",
    "check_recovery_conditions",
    "format_array",
    "write_array",
    "read_array",
]
