"""Support cells to physical delay / sine-azimuth / Doppler estimates."""
from typing import Iterable, Tuple

from models.data_models import GridIndex, RadarParams, TargetEstimate
from scene.grid import grid_to_physical


def estimate_parameters(support: Iterable[GridIndex], params: RadarParams) -> Tuple[TargetEstimate, ...]:
    estimates = []
    for idx in support:
        tau_l, vartheta, f_D = grid_to_physical(idx, params)
        estimates.append(TargetEstimate(tau=tau_l, vartheta=vartheta, f_D=f_D))
    return tuple(estimates)
