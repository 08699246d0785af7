"""
Cognitive transmit spectrum: subbands inside one per-transmitter slot, the
amplitude scale that keeps total transmit power fixed, and the Fourier
coefficient indices the receiver samples.

Power relation: a flat reference spectrum over B_h and a flat cognitive spectrum
over the union of subbands carry the same power, so
gamma**2 * sum(|B_i|) = B_h, i.e. gamma = sqrt(B_h / sum(|B_i|)).
"""
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

import config
from models.data_models import CognitiveSpectrum, RadarParams
from utils.errors import SpectrumError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Tolerance on k/tau landing exactly on a band edge
_EDGE_EPS = 1e-9

Band = Tuple[float, float]


def _validate_bands(B_h: float, bands: Iterable[Sequence[float]]) -> Tuple[Band, ...]:
    checked: List[Band] = []
    for band in bands:
        if len(band) != 2:
            raise SpectrumError(f"Band {band!r} must be a (start_Hz, stop_Hz) pair")
        start, stop = float(band[0]), float(band[1])
        if not start < stop:
            raise SpectrumError(f"Band [{start:g}, {stop:g}) is empty")
        if start < 0.0 or stop > B_h:
            raise SpectrumError(f"Band [{start:g}, {stop:g}) exceeds the transmit slot [0, {B_h:g})")
        checked.append((start, stop))
    if not checked:
        raise SpectrumError("At least one band is required")

    checked.sort()
    for (a0, a1), (b0, b1) in zip(checked, checked[1:]):
        if b0 < a1:
            raise SpectrumError(f"Bands [{a0:g}, {a1:g}) and [{b0:g}, {b1:g}) overlap")
    return tuple(checked)


def _band_indices(bands: Sequence[Band], tau: float, n_max: int) -> np.ndarray:
    indices = []
    for start, stop in bands:
        lo = math.ceil(start * tau - _EDGE_EPS)
        hi = math.ceil(stop * tau - _EDGE_EPS) - 1
        lo, hi = max(lo, 0), min(hi, n_max - 1)
        if hi >= lo:
            indices.append(np.arange(lo, hi + 1, dtype=np.int64))
    if not indices:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(indices))


def build_cognitive_spectrum(
    B_h: float,
    bands: Iterable[Sequence[float]],
    tau: float,
) -> CognitiveSpectrum:
    """
    Validate a band set and derive gamma and kappa.

    Raises:
        SpectrumError: overlapping bands, bands outside [0, B_h), or no sampled coefficient
    """
    checked = _validate_bands(B_h, bands)
    occupied = sum(stop - start for start, stop in checked)
    gamma = math.sqrt(B_h / occupied)
    kappa = _band_indices(checked, tau, int(round(B_h * tau)))
    if kappa.size == 0:
        raise SpectrumError("Band set selects no Fourier coefficient")

    logger.debug(f"Spectrum: {len(checked)} bands, {occupied / 1e6:.3f} MHz occupied, "
                 f"gamma={gamma:.4f}, K={kappa.size}")
    return CognitiveSpectrum(B_h=B_h, bands=checked, gamma=gamma, kappa=kappa, tau=tau)


def coefficient_set(spectrum: CognitiveSpectrum, tau: float) -> np.ndarray:
    """Sorted indices k with k/tau inside some band (half-open)."""
    kappa = _band_indices(spectrum.bands, tau, int(round(spectrum.B_h * tau)))
    if kappa.size == 0:
        raise SpectrumError("Spectrum selects no Fourier coefficient")
    return kappa


def full_band_spectrum(params: RadarParams) -> CognitiveSpectrum:
    """Non-cognitive operation: the whole slot, gamma = 1, kappa = 0..N-1."""
    return build_cognitive_spectrum(params.B_h, [(0.0, params.B_h)], params.tau)


def prototype_spectrum(params: RadarParams) -> CognitiveSpectrum:
    """The eight 375 kHz prototype subbands."""
    return build_cognitive_spectrum(params.B_h, config.prototype_bands(), params.tau)
