"""
Scene generation.

Random scenes are on-grid, with distinct (s, r, u) cells and a minimum
sine-azimuth spacing between every pair of targets. Amplitudes are constant
modulus (non-fluctuating targets) with a uniform random phase; an optional dB
range spreads the moduli log-uniformly for dynamic-range studies.
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

import config
from models.data_models import GridIndex, RadarParams, Target, TargetScene
from scene.grid import target_at
from utils.errors import SceneGenerationError
from utils.logging_utils import setup_logger
from utils.units import range_to_delay, velocity_to_doppler

logger = setup_logger(__name__)

_MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class Separation:
    """Minimum pairwise spacing: sine-azimuth units, and whole bins in range/Doppler."""
    azimuth: float = config.MIN_AZIMUTH_SEPARATION
    range_bins: int = 0
    doppler_bins: int = 0


def _as_separation(min_sep: Union[Separation, float, None]) -> Separation:
    if min_sep is None:
        return Separation()
    if isinstance(min_sep, Separation):
        return min_sep
    return Separation(azimuth=float(min_sep))


def _azimuth_capacity(params: RadarParams, sep: Separation) -> int:
    if sep.azimuth <= 0:
        return params.range_bins * params.azimuth_bins * params.doppler_bins
    step_bins = int(np.ceil(sep.azimuth / params.azimuth_cell - 1e-9))
    return (params.azimuth_bins - 1) // max(step_bins, 1) + 1


def _compatible(candidate: GridIndex, placed: Sequence[GridIndex], params: RadarParams, sep: Separation) -> bool:
    for other in placed:
        if candidate == other:
            return False
        if abs(candidate.r - other.r) * params.azimuth_cell < sep.azimuth - 1e-12:
            return False
        if sep.range_bins and abs(candidate.s - other.s) < sep.range_bins:
            return False
        if sep.doppler_bins and abs(candidate.u - other.u) < sep.doppler_bins:
            return False
    return True


def random_scene(
    L: int,
    params: RadarParams,
    min_sep: Union[Separation, float, None] = None,
    seed: int = 0,
    *,
    amplitude_db_range: Optional[Tuple[float, float]] = None,
) -> TargetScene:
    """
    Draw L on-grid targets.

    Raises:
        SceneGenerationError: L exceeds what the separation allows, or the
            redraw budget ran out
    """
    if L < 0:
        raise SceneGenerationError(f"Target count must be >= 0, got {L}")
    sep = _as_separation(min_sep)
    if L == 0:
        return TargetScene(targets=(), grid=())

    capacity = _azimuth_capacity(params, sep)
    if L > capacity:
        raise SceneGenerationError(
            f"{L} targets cannot be {sep.azimuth:g} apart in sine-azimuth "
            f"(at most {capacity} fit on {params.azimuth_bins} bins)"
        )

    rng = np.random.default_rng(seed)
    placed: List[GridIndex] = []
    draws = 0
    while len(placed) < L:
        draws += 1
        if draws > _MAX_REDRAWS:
            raise SceneGenerationError(
                f"Placed {len(placed)}/{L} targets after {_MAX_REDRAWS} draws (seed={seed})"
            )
        candidate = GridIndex(
            s=int(rng.integers(params.range_bins)),
            r=int(rng.integers(params.azimuth_bins)),
            u=int(rng.integers(params.doppler_bins)),
        )
        if _compatible(candidate, placed, params, sep):
            placed.append(candidate)

    phases = rng.uniform(0.0, 2.0 * np.pi, size=L)
    if amplitude_db_range is None:
        moduli = np.ones(L)
    else:
        lo, hi = amplitude_db_range
        moduli = 10.0 ** (rng.uniform(lo, hi, size=L) / 20.0)
    alphas = moduli * np.exp(1j * phases)

    targets = tuple(target_at(idx, params, alpha) for idx, alpha in zip(placed, alphas))
    logger.debug(f"Random scene: L={L} seed={seed} draws={draws}")
    return TargetScene(targets=targets, grid=tuple(placed))


def closely_spaced_scene(
    params: RadarParams,
    *,
    centers: Iterable[float] = (-0.30, 0.40),
    separation: float = 0.02,
    range_m: Optional[float] = None,
    velocity_mps: float = 0.0,
    alpha: complex = 1.0,
) -> TargetScene:
    """
    Pairs of equal-range, equal-velocity targets `separation` apart in
    sine-azimuth, one pair per center. With the default centers each pair sits
    inside one 0.025 azimuth cell and on the 0.005 reference grid. The scene is
    off-grid in general, so `grid` is None.
    """
    tau_l = params.tau / 4.0 if range_m is None else range_to_delay(range_m)
    f_D = velocity_to_doppler(velocity_mps, params.f_c)
    half = separation / 2.0
    targets = []
    for center in centers:
        for vartheta in (center - half, center + half):
            targets.append(Target(alpha=complex(alpha), tau_l=tau_l, vartheta=vartheta, f_D=f_D))
    return TargetScene(targets=tuple(targets), grid=None)
