"""Calibrated circular complex Gaussian noise on coefficient tensors."""
import math

import numpy as np

from models.data_models import CoefficientTensor, NoiseSpec
from utils.errors import ConfigurationError, UndefinedSnrError
from utils.logging_utils import setup_logger
from utils.units import db_to_linear

logger = setup_logger(__name__)

POWER_REFERENCES = ("tensor", "transmit")


def noise_variance(tensor: CoefficientTensor, noise: NoiseSpec) -> float:
    """
    Per-coefficient noise variance for the requested SNR.

    "tensor" measures the clean tensor's mean power. "transmit" divides it by
    gamma**2, so cognitive and full-band transmitters at equal total power see
    the same noise floor.
    """
    if noise.power_reference not in POWER_REFERENCES:
        raise ConfigurationError(
            f"Unknown power reference {noise.power_reference!r}; expected one of {POWER_REFERENCES}"
        )
    signal_power = float(np.mean(np.abs(tensor.data) ** 2))
    if noise.power_reference == "transmit":
        signal_power /= tensor.gamma ** 2
    if signal_power <= 0.0:
        raise UndefinedSnrError(f"SNR {noise.snr_db} dB is undefined for a tensor with zero signal power")
    return signal_power / db_to_linear(noise.snr_db) * db_to_linear(noise.snr_loss_db)


def add_noise(tensor: CoefficientTensor, noise: NoiseSpec) -> CoefficientTensor:
    """Return a noisy copy; snr_db=+inf returns the input tensor unchanged."""
    if math.isinf(noise.snr_db) and noise.snr_db > 0:
        return tensor
    if math.isnan(noise.snr_db):
        raise ConfigurationError("SNR must be a number or +inf")

    variance = noise_variance(tensor, noise)
    rng = np.random.default_rng(noise.seed)
    sigma = math.sqrt(variance / 2.0)
    noise_data = sigma * (rng.standard_normal(tensor.data.shape) + 1j * rng.standard_normal(tensor.data.shape))
    logger.debug(f"Noise: snr={noise.snr_db} dB ref={noise.power_reference} variance={variance:.4g} seed={noise.seed}")
    return tensor.with_data(tensor.data + noise_data)
