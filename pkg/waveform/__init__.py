"""Transmit spectrum, FDM plan, subsampling and coherence diagnostics."""

from .spectrum import (
    build_cognitive_spectrum,
    coefficient_set,
    full_band_spectrum,
    prototype_spectrum,
)
from .tx_plan import build_tx_plan
from .subsampling import alias_map, folded_intervals
from .coherence import mutual_coherence, fourier_coherence, range_coherence_report

__all__ = [
    "build_cognitive_spectrum",
    "coefficient_set",
    "full_band_spectrum",
    "prototype_spectrum",
    "build_tx_plan",
    "alias_map",
    "folded_intervals",
    "mutual_coherence",
    "fourier_coherence",
    "range_coherence_report",
]
