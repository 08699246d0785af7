"""
CogRadar Recovery Package
Dictionaries, Doppler focusing, simultaneous OMP and local refinement.
"""

from .dictionaries import atom, azimuth_grid, build_dictionaries
from .focusing import doppler_focus, focus_frequencies
from .somp import StopCriterion, correlation_map, recover
from .estimation import estimate_parameters
from .refinement import refine, steering_tensor
from .recovery_controller import RecoveryController

__all__ = [
    "atom",
    "azimuth_grid",
    "build_dictionaries",
    "doppler_focus",
    "focus_frequencies",
    "StopCriterion",
    "correlation_map",
    "recover",
    "estimate_parameters",
    "refine",
    "steering_tensor",
    "RecoveryController",
]
