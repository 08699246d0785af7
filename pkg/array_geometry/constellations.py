"""
Antenna constellations for the four prototype modes.

Mode 1 is the uniform Nyquist array (receivers lambda/2 apart, transmitters
R*lambda/2 apart). Modes 2-4 draw element positions uniformly at random inside
the aperture with numpy's PCG64 generator (`numpy.random.default_rng(seed)`),
redrawing any element that lands closer than MIN_ELEMENT_SPACING to an element
of the same type. Positions are in wavelengths.
"""
from typing import Optional, Tuple

import numpy as np

import config
from models.data_models import ArrayConfig, Mode, RadarParams
from utils.errors import ConfigurationError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)

_MAX_REDRAWS = 1000


def _draw_positions(
    rng: np.random.Generator,
    count: int,
    aperture: float,
    min_spacing: float,
) -> Tuple[float, ...]:
    positions = []
    for idx in range(count):
        for _ in range(_MAX_REDRAWS):
            candidate = float(rng.uniform(0.0, aperture))
            if all(abs(candidate - p) >= min_spacing for p in positions):
                positions.append(candidate)
                break
        else:
            raise ConfigurationError(
                f"Could not place element {idx + 1}/{count} with spacing >= {min_spacing} "
                f"inside aperture {aperture}"
            )
    return tuple(sorted(positions))


def _uniform_array(params: RadarParams) -> ArrayConfig:
    xi = tuple(m * params.R / 2.0 for m in range(params.T))
    zeta = tuple(q / 2.0 for q in range(params.R))
    return ArrayConfig(
        mode=Mode.MODE1,
        xi=xi,
        zeta=zeta,
        Z=params.T * params.R / 2.0,
        tx_slots=tuple(range(params.T)),
        seed=None,
    )


def build_array(
    params: RadarParams,
    mode,
    seed: int,
    *,
    n_tx: Optional[int] = None,
    n_rx: Optional[int] = None,
    aperture: Optional[float] = None,
    min_spacing: float = config.MIN_ELEMENT_SPACING,
) -> ArrayConfig:
    """
    Build the constellation for a mode.

    Args:
        params: radar constants (T, R fix the Nyquist reference)
        mode: 1-4 or Mode
        seed: 64-bit seed for the random modes (ignored by Mode 1)
        n_tx, n_rx: override element counts of the random modes
        aperture: override the Mode 4 aperture (normalized units)
        min_spacing: same-type rejection distance; 0 disables it

    Returns:
        ArrayConfig with positions sorted ascending

    Raises:
        ConfigurationError: unsupported mode, odd T/R for Mode 3, or counts that
            cannot be placed
    """
    mode = Mode.parse(mode)

    if mode is Mode.MODE1:
        return _uniform_array(params)

    if mode is Mode.MODE3:
        if params.T % 2 or params.R % 2:
            raise ConfigurationError(f"Mode 3 needs even T and R (got T={params.T}, R={params.R})")
        default_tx, default_rx = params.T // 2, params.R // 2
    else:
        default_tx, default_rx = params.T, params.R

    n_tx = default_tx if n_tx is None else int(n_tx)
    n_rx = default_rx if n_rx is None else int(n_rx)
    if n_tx < 1 or n_rx < 1:
        raise ConfigurationError("Random arrays need at least one Tx and one Rx element")
    if n_tx > params.T:
        raise ConfigurationError(f"{n_tx} transmitters exceed the {params.T} FDM slots")

    if mode is Mode.MODE4:
        Z = float(aperture) if aperture is not None else config.MODE4_APERTURE
    else:
        Z = params.T * params.R / 2.0

    rng = np.random.default_rng(seed)
    xi = _draw_positions(rng, n_tx, Z, min_spacing)
    zeta = _draw_positions(rng, n_rx, Z, min_spacing)

    if mode is Mode.MODE3:
        slots = tuple(int(s) for s in np.sort(rng.choice(params.T, size=n_tx, replace=False)))
    else:
        slots = tuple(range(n_tx))

    logger.debug(f"Mode {int(mode)} array: M={n_tx} Q={n_rx} Z={Z} seed={seed} slots={slots}")
    return ArrayConfig(mode=mode, xi=xi, zeta=zeta, Z=Z, tx_slots=slots, seed=int(seed))


def grid_params(params: RadarParams, array: ArrayConfig) -> RadarParams:
    """
    Recovery grid for an array: 2Z azimuth bins (TR for Modes 1-3, 400 for the
    Mode 4 reference aperture), expressed by replacing R with 2Z/T.
    """
    bins = 2.0 * array.Z
    n_bins = int(round(bins))
    if abs(bins - n_bins) > 1e-9 or n_bins % params.T:
        raise ConfigurationError(
            f"Aperture Z={array.Z} gives {bins:g} azimuth bins, not a multiple of T={params.T}"
        )
    if n_bins == params.azimuth_bins:
        return params
    return params.replace(R=n_bins // params.T)


def virtual_positions(array: ArrayConfig) -> np.ndarray:
    """Sorted virtual element positions zeta_q + xi_m (M*Q entries)."""
    sums = np.add.outer(np.asarray(array.xi), np.asarray(array.zeta))
    return np.sort(sums.ravel())
