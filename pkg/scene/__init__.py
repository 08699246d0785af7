"""Target scenes on and off the recovery grid."""

from .grid import check_index, grid_to_physical, physical_to_grid, target_at
from .generator import Separation, closely_spaced_scene, random_scene
from .scene_io import CLOSELY_SPACED_PATH, load_closely_spaced, read_scene, write_scene

__all__ = [
    "check_index",
    "grid_to_physical",
    "physical_to_grid",
    "target_at",
    "Separation",
    "closely_spaced_scene",
    "random_scene",
    "CLOSELY_SPACED_PATH",
    "load_closely_spaced",
    "read_scene",
    "write_scene",
]
