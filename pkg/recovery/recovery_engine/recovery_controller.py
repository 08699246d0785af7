"""
Recovery Controller

Coordinates the recovery stage: Doppler focusing, simultaneous OMP on the
coarse grid, and optional local refinement. Dictionaries are built once per
(array, plan, kappa) and reused across tensors, which is what the Monte-Carlo
loop needs.
"""
from typing import Optional

import numpy as np

import config
from models.data_models import ArrayConfig, CoefficientTensor, RadarParams, RecoveryResult, TxPlan
from recovery.recovery_engine.dictionaries import build_dictionaries
from recovery.recovery_engine.focusing import doppler_focus
from recovery.recovery_engine.refinement import refine
from recovery.recovery_engine.somp import StopCriterion, recover
from utils.errors import RecoveryInputError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)


class RecoveryController:
    """Runs focus -> SOMP -> refine for one fixed array and coefficient set."""

    def __init__(
        self,
        params: RadarParams,
        array: ArrayConfig,
        plan: TxPlan,
        kappa: np.ndarray,
        stop: StopCriterion,
        refine_factor: int = 0,
        swap_sweeps: int = config.SUPPORT_SWAP_SWEEPS,
    ):
        """
        Args:
            params: recovery-grid parameters (see array_geometry.grid_params)
            array: antenna constellation
            plan: FDM carrier plan for the array's transmitters
            kappa: coefficient set the receiver acquires
            stop: SOMP stopping rule
            refine_factor: 0 disables refinement
            swap_sweeps: support-correction sweeps after the greedy pass (0 disables)
        """
        if refine_factor < 0:
            raise RecoveryInputError(f"Refinement factor must be >= 0, got {refine_factor}")
        if swap_sweeps < 0:
            raise RecoveryInputError(f"Swap sweeps must be >= 0, got {swap_sweeps}")
        self.params = params
        self.stop = stop
        self.refine_factor = refine_factor
        self.swap_sweeps = swap_sweeps
        self.dictionaries = build_dictionaries(params, array, plan, kappa)
        logger.debug(f"RecoveryController ready: mode={int(array.mode)} M={array.M} Q={array.Q} "
                     f"K={len(kappa)} refine={refine_factor}")

    def run(self, tensor: CoefficientTensor, stop: Optional[StopCriterion] = None) -> RecoveryResult:
        """
        Recover targets from one coefficient tensor.

        Raises:
            RecoveryInputError: tensor shape does not match the dictionaries
            IllConditionedSupportError: rank-deficient support during SOMP
        """
        if not np.array_equal(tensor.kappa, self.dictionaries.kappa):
            raise RecoveryInputError("Tensor coefficient set differs from the dictionaries'")
        focused = doppler_focus(tensor)
        result = recover(focused, self.dictionaries, stop or self.stop, swap_sweeps=self.swap_sweeps)
        if self.refine_factor:
            result = refine(result, tensor, self.dictionaries, self.refine_factor)
        return result
