"""Array-structure phase parameter beta_mq."""
import numpy as np

from models.data_models import ArrayConfig, RadarParams, TxPlan
from utils.errors import ConfigurationError


def compute_beta(xi_m: float, zeta_q: float, f_m: float, params: RadarParams) -> float:
    """beta_mq = (zeta_q + xi_m)(f_m * lambda / c + 1); lambda / c = 1 / f_c."""
    return (zeta_q + xi_m) * (f_m / params.f_c + 1.0)


def channel_betas(array: ArrayConfig, plan: TxPlan, params: RadarParams) -> np.ndarray:
    """beta for every (m, q) channel, shape (M, Q)."""
    if plan.M != array.M:
        raise ConfigurationError(f"Tx plan has {plan.M} carriers for {array.M} transmitters")
    xi = np.asarray(array.xi, dtype=float)
    zeta = np.asarray(array.zeta, dtype=float)
    scale = np.asarray(plan.f_m, dtype=float) / params.f_c + 1.0
    return (xi[:, np.newaxis] + zeta[np.newaxis, :]) * scale[:, np.newaxis]
