"""Shared parameter sets, arrays and spectra for the CogRadar tests."""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from array_geometry.constellations import build_array  # noqa: E402
from evaluation.scenario import load_scenario  # noqa: E402
from models.data_models import RadarParams  # noqa: E402
from waveform.spectrum import build_cognitive_spectrum, full_band_spectrum  # noqa: E402
from waveform.tx_plan import build_tx_plan  # noqa: E402

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def prototype_params():
    """Hardware prototype: 8x10, 100 us PRI, 10 pulses, 15 MHz slots, X-band."""
    return RadarParams(T=8, R=10, tau=1e-4, P=10, B_h=15e6, f_c=10e9)


@pytest.fixture
def small_params():
    """T=2, R=3, N=16, P=4: small enough for exhaustive checks."""
    return RadarParams(T=2, R=3, tau=1e-4, P=4, B_h=1.6e5, f_c=10e9)


@pytest.fixture
def small_setup(small_params):
    """Mode 1 array, full band, for the small instance."""
    array = build_array(small_params, 1, seed=0)
    plan = build_tx_plan(small_params, array, guard=0.0)
    spectrum = full_band_spectrum(small_params)
    return small_params, array, plan, spectrum


@pytest.fixture
def subband_params():
    """T=4, R=4, N=64, P=8."""
    return RadarParams(T=4, R=4, tau=1e-4, P=8, B_h=6.4e5, f_c=10e9)


@pytest.fixture
def subband_setup(subband_params):
    """Random 2 Tx x 4 Rx array and a 16-coefficient subband set on the T=4, R=4 instance."""
    params = subband_params
    array = build_array(params, 2, seed=7, n_tx=2, n_rx=4)
    plan = build_tx_plan(params, array, guard=0.0)
    spectrum = build_cognitive_spectrum(params.B_h, [(4e4, 1.2e5), (3.0e5, 3.8e5)], params.tau)
    return params, array, plan, spectrum


@pytest.fixture
def desk_scenario():
    return load_scenario(CONFIG_DIR / "desk_scale.yaml")


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
