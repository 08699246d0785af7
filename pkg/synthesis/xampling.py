"""
Xampled Fourier coefficients of the received signal.

    y[m, q, p, k] = gamma * sum_l alpha_l
                    * exp(+j 2 pi beta_mq vartheta_l)
                    * exp(-j 2 pi kappa_k tau_l / tau)
                    * exp(-j 2 pi f_m tau_l)
                    * exp(+j 2 pi f_D_l p tau)

Synthesis works directly in the coefficient domain; the analog front end is
represented by gamma, the sampled set kappa and the noise budgets.
"""
from typing import Optional

import numpy as np

from array_geometry.phase import channel_betas
from models.data_models import ArrayConfig, CoefficientTensor, CognitiveSpectrum, RadarParams, TargetScene, TxPlan
from utils.errors import ConfigurationError, SpectrumError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)


def _check_windows(scene: TargetScene, params: RadarParams) -> None:
    f_max = 1.0 / (2.0 * params.tau)
    for idx, t in enumerate(scene.targets):
        if not 0.0 <= t.tau_l < params.tau:
            raise ConfigurationError(f"Target {idx}: delay {t.tau_l:g} s outside [0, {params.tau:g})")
        if abs(t.vartheta) > 1.0:
            raise ConfigurationError(f"Target {idx}: sine-azimuth {t.vartheta:g} outside [-1, 1]")
        if abs(t.f_D) > f_max * (1.0 + 1e-12):
            raise ConfigurationError(f"Target {idx}: Doppler {t.f_D:g} Hz outside +/-{f_max:g}")


def synthesize(
    scene: TargetScene,
    array: ArrayConfig,
    plan: TxPlan,
    spectrum: CognitiveSpectrum,
    params: RadarParams,
    *,
    kappa: Optional[np.ndarray] = None,
) -> CoefficientTensor:
    """
    Coefficient tensor of shape (M, Q, P, K) scaled by the spectrum's gamma.

    Args:
        kappa: coefficients the receiver acquires; defaults to the spectrum's own
            set. A sub-Nyquist receiver keeps its kappa while the transmitter
            switches between cognitive and full-band operation.

    Raises:
        ConfigurationError: array/plan size mismatch or target outside the
            unambiguous windows
        SpectrumError: empty coefficient set
    """
    betas = channel_betas(array, plan, params)
    kappa = np.asarray(spectrum.kappa if kappa is None else kappa, dtype=np.int64)
    if kappa.size == 0:
        raise SpectrumError("Cannot synthesize with an empty coefficient set")
    _check_windows(scene, params)

    M, Q = betas.shape
    shape = (M, Q, params.P, kappa.size)
    if scene.L == 0:
        return CoefficientTensor(data=np.zeros(shape, dtype=complex), kappa=kappa, params=params, gamma=spectrum.gamma)

    alpha = np.array([t.alpha for t in scene.targets], dtype=complex)
    tau_l = np.array([t.tau_l for t in scene.targets])
    vartheta = np.array([t.vartheta for t in scene.targets])
    f_D = np.array([t.f_D for t in scene.targets])
    f_m = np.asarray(plan.f_m, dtype=float)
    pulses = np.arange(params.P)

    # (L, M, Q)
    azimuth = np.exp(2j * np.pi * betas[np.newaxis, :, :] * vartheta[:, np.newaxis, np.newaxis])
    # (L, M, K): baseband delay term times the carrier offset term
    delay = np.exp(-2j * np.pi * np.outer(tau_l, kappa) / params.tau)[:, np.newaxis, :] \
        * np.exp(-2j * np.pi * np.outer(tau_l, f_m))[:, :, np.newaxis]
    # (L, P)
    doppler = np.exp(2j * np.pi * np.outer(f_D, pulses) * params.tau)

    data = spectrum.gamma * np.einsum("l,lmq,lp,lmk->mqpk", alpha, azimuth, doppler, delay, optimize=True)
    logger.debug(f"Synthesized {scene.L} targets into tensor {shape}, gamma={spectrum.gamma:.4f}")
    return CoefficientTensor(data=data, kappa=kappa, params=params, gamma=spectrum.gamma)
