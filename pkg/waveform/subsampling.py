"""
Foldable multiband subsampling.

Sampling a channel at f_s folds coefficient k onto k mod N_s, N_s = round(f_s * tau).
The subbands are usable only if no two sampled coefficients fold onto the same index.
"""
from collections import defaultdict
from typing import List, Optional, Tuple

import numpy as np

from models.data_models import AliasMap
from utils.errors import AliasCollisionError, ConfigurationError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)


def alias_map(
    kappa: np.ndarray,
    N: int,
    f_s: float,
    tau: float,
    *,
    q_factor: Optional[float] = None,
    strict: bool = True,
) -> AliasMap:
    """
    Fold kappa modulo N_s and check injectivity.

    Args:
        kappa: sampled coefficient indices
        N: coefficients per channel at the Nyquist rate
        f_s: ADC rate in Hz
        tau: PRI in seconds
        q_factor: reported subsampling factor; defaults to the real-IF
            convention Nyquist-rate / f_s = 2N / (f_s tau)
        strict: raise on collision instead of returning injective=False

    Raises:
        AliasCollisionError: two coefficients fold together (strict mode)
    """
    if f_s * tau < 1:
        raise ConfigurationError(f"f_s * tau = {f_s * tau:g} must be >= 1")
    kappa = np.asarray(kappa, dtype=np.int64)
    modulus = int(round(f_s * tau))
    folded = np.mod(kappa, modulus)
    if q_factor is None:
        q_factor = 2.0 * N / (f_s * tau)

    owners = defaultdict(list)
    for k, f in zip(kappa.tolist(), folded.tolist()):
        owners[f].append(k)
    collisions: List[Tuple[int, int]] = []
    for ks in owners.values():
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                collisions.append((ks[i], ks[j]))
    collisions.sort()

    if collisions:
        if strict:
            raise AliasCollisionError(collisions, modulus)
        logger.warning(f"{len(collisions)} aliasing collisions modulo {modulus}")

    return AliasMap(
        q_factor=float(q_factor),
        modulus=modulus,
        kappa=kappa,
        folded=folded,
        injective=not collisions,
    )


def folded_intervals(amap: AliasMap) -> List[Tuple[int, int]]:
    """Inclusive folded index runs, one per run of consecutive sampled coefficients."""
    runs: List[Tuple[int, int]] = []
    kappa = amap.kappa.tolist()
    folded = amap.folded.tolist()
    if not kappa:
        return runs
    start = 0
    for i in range(1, len(kappa) + 1):
        run_breaks = (
            i == len(kappa)
            or kappa[i] != kappa[i - 1] + 1
            or folded[i] != folded[i - 1] + 1
        )
        if run_breaks:
            runs.append((folded[start], folded[i - 1]))
            start = i
    return runs
