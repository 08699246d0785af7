"""
Global configuration for the CogRadar toolkit.

Defaults reproduce the hardware prototype parameter set (8 Tx, 10 Rx, X-band,
100 us PRI, 10 pulses). Scenario files in configs/ override them per run.
"""

import os
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import load_dotenv

# Load variables from .env (if present)
load_dotenv()

# === Physical Constants ===
# Rounded value used throughout the prototype budget tables, so that
# lambda = 3 cm at 10 GHz and the 1.25 m / 15 km / 75 m/s figures are exact.
SPEED_OF_LIGHT: float = 3.0e8

# === Radar Parameters (prototype) ===
NUM_TX: int = 8                    # T, Nyquist-reference transmitters
NUM_RX: int = 10                   # R, Nyquist-reference receivers
PRI_SECONDS: float = 100e-6        # tau
PULSES_PER_CPI: int = 10           # P
TX_BANDWIDTH_HZ: float = 15e6      # B_h, per-transmitter slot including guard-band
GUARD_BAND_HZ: float = 3e6         # guard between adjacent FDM slots
CARRIER_HZ: float = 10e9           # f_c

# Mode 4 draws within the aperture of the 20x20 virtual reference array
MODE4_APERTURE: float = 200.0
# Element count per side of the 20x20 reference array that aperture corresponds to
REFERENCE_ARRAY_SIZE: int = 20
# Minimum spacing between same-type elements in random constellations (normalized units)
MIN_ELEMENT_SPACING: float = 0.5
# Seed for random constellations (Modes 2-4); hardware arrays stay fixed across trials
ARRAY_SEED: int = 20190401

# === Cognitive Spectrum ===
# The eight prototype subbands inside one 15 MHz transmit slot (start in Hz)
SUBBAND_STARTS_HZ: List[float] = [
    1.63e6, 2.16e6, 3.05e6, 3.88e6, 5.66e6, 6.51e6, 8.64e6, 12.32e6,
]
SUBBAND_WIDTH_HZ: float = 375e3


def prototype_bands() -> List[Tuple[float, float]]:
    """Half-open (start, stop) pairs of the prototype subbands."""
    return [(start, start + SUBBAND_WIDTH_HZ) for start in SUBBAND_STARTS_HZ]


# === Receiver / ADC ===
ADC_SAMPLE_RATE_HZ: float = 7.5e6
ADC_SATURATION_DBM: float = 10.0   # +/- 10 dBm rails
ADC_BITS: int = 16
ADC_EFFECTIVE_BITS: float = 11.85
ADC_REFERENCE_BW_HZ: float = 1e6
# Real-IF subsampling factor quoted for the analog front-end (30 MHz / 7.5 MHz)
SUBSAMPLING_Q: float = 4.0
STOPBAND_ATTENUATION_DB: float = 30.0

# === Recovery ===
# Local refinement factor F (0 keeps the coarse grid estimates)
REFINE_FACTOR: int = 0
MAX_OMP_ITERATIONS: int = 64
# Single-swap sweeps over the greedy support after SOMP (0 keeps the greedy support)
SUPPORT_SWAP_SWEEPS: int = 3

# === Experiments ===
MASTER_SEED: int = 12345
DEFAULT_TRIALS: int = 100
DEFAULT_TARGETS: int = 10
MIN_AZIMUTH_SEPARATION: float = 0.025
# Experiment fails when more than this share of trials raised
MAX_TRIAL_FAILURE_RATE: float = 0.10
# Worker processes for Monte-Carlo trials (1 = run in-process)
WORKERS: int = int(os.getenv("COGRADAR_WORKERS", "1"))

# === Output ===
OUTPUT_BASE: Path = Path(os.getenv("COGRADAR_OUTPUT_DIR", "test_output"))
CONFIG_DIR: Path = Path(__file__).parent / "configs"
DEFAULT_SCENARIO: Optional[Path] = CONFIG_DIR / "prototype.yaml"

# === Debug / Logging ===
DEBUG_LOGGING: bool = os.getenv("COGRADAR_DEBUG_LOGGING", "false").lower() == "true"
