"""
Range and azimuth dictionaries of the per-channel measurement model.

    A^m[k, n] = exp(-j 2 pi kappa_k n / (TN)) * exp(-j 2 pi (f_m / B_h) (n / T))
    B^m[q, r] = exp(+j 2 pi beta_mq vartheta_r),  vartheta_r = -1 + 2 r / (TR)

A^m factors into a channel-independent base and a per-column phase, which is all
that is stored for the range side. Column (r*TN + s) of B^m kron A^m is the atom
of grid cell (s, r).
"""
import numpy as np

from array_geometry.phase import channel_betas
from models.data_models import ArrayConfig, Dictionaries, RadarParams, TxPlan
from utils.errors import SpectrumError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)


def azimuth_grid(params: RadarParams) -> np.ndarray:
    return -1.0 + 2.0 * np.arange(params.azimuth_bins) / params.azimuth_bins


def build_dictionaries(params: RadarParams, array: ArrayConfig, plan: TxPlan, kappa: np.ndarray) -> Dictionaries:
    kappa = np.asarray(kappa, dtype=np.int64)
    if kappa.size == 0:
        raise SpectrumError("Dictionaries need a non-empty coefficient set")
    betas = channel_betas(array, plan, params)
    carriers = np.asarray(plan.f_m, dtype=float)

    n = np.arange(params.range_bins)
    range_base = np.exp(-2j * np.pi * np.outer(kappa, n) / params.range_bins)
    range_phase = np.exp(-2j * np.pi * np.outer(carriers / params.B_h, n / params.T))
    azimuth = np.exp(2j * np.pi * betas[:, :, np.newaxis] * azimuth_grid(params)[np.newaxis, np.newaxis, :])

    logger.debug(f"Dictionaries: M={plan.M} K={kappa.size} TN={params.range_bins} "
                 f"Q={array.Q} TR={params.azimuth_bins}")
    return Dictionaries(
        range_base=range_base,
        range_phase=range_phase,
        azimuth=azimuth,
        kappa=kappa,
        params=params,
        betas=betas,
        carriers=carriers,
    )


def atom(dictionaries: Dictionaries, m: int, s: int, r: int) -> np.ndarray:
    """Atom of cell (s, r) in channel m as a (Q, K) array (B^m[:, r] outer A^m[:, s])."""
    range_column = dictionaries.range_base[:, s] * dictionaries.range_phase[m, s]
    return np.outer(dictionaries.azimuth[m, :, r], range_column)
