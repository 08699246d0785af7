"""
Range / sine-azimuth / Doppler recovery grid.

    tau_l   = tau * s / (TN)          s in 0..TN-1
    vartheta = -1 + 2 r / (TR)        r in 0..TR-1
    f_D     = -1/(2 tau) + u / (P tau)  u in 0..P-1

Delay and Doppler are periodic, so physical_to_grid wraps s and u. Sine-azimuth
is not: r is clamped to 0..TR-1.
"""
from typing import Tuple

import math

from models.data_models import GridIndex, RadarParams, Target
from utils.errors import GridRangeError

# Absorbs float error so exact half-bin ties round up
_TIE_EPS = 1e-9


def check_index(idx: GridIndex, params: RadarParams) -> None:
    bounds = (params.range_bins, params.azimuth_bins, params.doppler_bins)
    for name, value, bound in zip(("s", "r", "u"), (idx.s, idx.r, idx.u), bounds):
        if not 0 <= value < bound:
            raise GridRangeError(f"Grid index {name}={value} outside 0..{bound - 1}")


def grid_to_physical(idx: GridIndex, params: RadarParams) -> Tuple[float, float, float]:
    check_index(idx, params)
    tau_l = params.tau * idx.s / params.range_bins
    vartheta = -1.0 + 2.0 * idx.r / params.azimuth_bins
    f_D = -1.0 / (2.0 * params.tau) + idx.u / (params.P * params.tau)
    return tau_l, vartheta, f_D


def _nearest(value: float) -> int:
    return int(math.floor(value + 0.5 + _TIE_EPS))


def physical_to_grid(target: Target, params: RadarParams) -> GridIndex:
    """
    Nearest bin on each axis; half-bin ties go to the upper bin.

    Sine-azimuth within half a bin of +1 has no upper neighbour and stays in bin TR-1.
    """
    s = _nearest(target.tau_l * params.range_bins / params.tau) % params.range_bins
    r = _nearest((target.vartheta + 1.0) * params.azimuth_bins / 2.0)
    r = min(max(r, 0), params.azimuth_bins - 1)
    u = _nearest((target.f_D + 1.0 / (2.0 * params.tau)) * params.P * params.tau) % params.doppler_bins
    return GridIndex(s=s, r=r, u=u)


def target_at(idx: GridIndex, params: RadarParams, alpha: complex = 1.0) -> Target:
    tau_l, vartheta, f_D = grid_to_physical(idx, params)
    return Target(alpha=complex(alpha), tau_l=tau_l, vartheta=vartheta, f_D=f_D)
