"""
Dictionary coherence diagnostics.

For partial Fourier dictionaries (columns e^{-j 2 pi kappa_k n / n_cols}) the Gram
matrix depends only on the column offset, so the coherence follows from a single
FFT of the kappa indicator instead of an n_cols x n_cols Gram.
"""
from typing import Dict, List

import numpy as np

from models.data_models import RadarParams, TxPlan
from utils.errors import DegenerateDictionaryError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)


def mutual_coherence(dictionary: np.ndarray) -> float:
    """Largest normalized inner product between two distinct columns."""
    dictionary = np.asarray(dictionary)
    if dictionary.ndim != 2 or dictionary.shape[1] < 2:
        raise DegenerateDictionaryError("Coherence needs a matrix with at least two columns")
    norms = np.linalg.norm(dictionary, axis=0)
    if np.any(norms == 0):
        zero_cols = np.flatnonzero(norms == 0).tolist()
        raise DegenerateDictionaryError(f"Dictionary has zero columns: {zero_cols[:10]}")

    normalized = dictionary / norms[np.newaxis, :]
    gram = np.abs(normalized.conj().T @ normalized)
    np.fill_diagonal(gram, 0.0)
    return float(min(gram.max(), 1.0))


def fourier_coherence(kappa: np.ndarray, n_columns: int) -> float:
    """Coherence of the K x n_columns partial Fourier dictionary on rows kappa."""
    kappa = np.asarray(kappa, dtype=np.int64)
    if n_columns < 2:
        raise DegenerateDictionaryError("Coherence needs at least two columns")
    if kappa.size == 0:
        raise DegenerateDictionaryError("Empty coefficient set")

    indicator = np.zeros(n_columns)
    np.add.at(indicator, np.mod(kappa, n_columns), 1.0)
    gram_row = np.abs(np.fft.fft(indicator))
    return float(min(gram_row[1:].max() / kappa.size, 1.0))


def range_coherence_report(kappa: np.ndarray, params: RadarParams, plan: TxPlan) -> Dict[str, object]:
    """
    Coherence of the range dictionaries for a coefficient set.

    `native` uses the N-point grid of one channel (resolution 1/B_h); it equals the
    coherence of the channel-stacked dictionary on the TN grid. `per_channel` is
    A^m on the TN grid, whose per-column phase does not change the value.
    """
    native = fourier_coherence(kappa, params.N)
    fine = fourier_coherence(kappa, params.range_bins)
    per_channel: List[float] = [fine for _ in plan.f_m]
    for m, value in enumerate(per_channel):
        logger.info(f"Range dictionary coherence A^{m} (TN grid): {value:.4f}")
    logger.info(f"Range dictionary coherence (native N grid): {native:.4f}")
    return {"native": native, "per_channel": per_channel}
