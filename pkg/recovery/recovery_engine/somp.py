"""
Simultaneous orthogonal matching pursuit over the Doppler-focused channels.

Each iteration scores every cell (s, r, u) by

    sum_m | <B^m[:, r] kron A^m[:, s], R[m, :, u, :]> |^2

on the current residual R, picks the best unused cell (lowest (u, r, s) on
ties) and refits all amplitudes by least squares, jointly across the M
channels. Cells in different Doppler bins see disjoint focused data, so the
refit splits into one small system per touched bin.

The per-channel score ignores the phase relation between transmitters, so two
targets sharing a Doppler bin can pull the greedy pick onto a cell between
them. After the greedy pass, a support correction replaces one cell at a time
with the candidate that lowers the joint least-squares residual most, until a
sweep changes nothing or the sweep budget is spent.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

import config
from models.data_models import Dictionaries, FocusedTensor, GridIndex, RecoveryResult
from recovery.recovery_engine.dictionaries import atom
from recovery.recovery_engine.estimation import estimate_parameters
from utils.errors import IllConditionedSupportError, RecoveryInputError
from utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Singular values below this fraction of the largest one count as rank loss
_RANK_TOL = 1e-10
# Cells ranked by score that compete for each vacated support slot
_SWAP_CANDIDATES = 16
# A swap must lower the residual norm by more than this fraction of the data norm
_SWAP_TOL = 1e-9


@dataclass(frozen=True)
class StopCriterion:
    """Exactly one of a known target count or a residual-norm ratio threshold."""
    targets: Optional[int] = None
    residual_ratio: Optional[float] = None
    max_iterations: int = config.MAX_OMP_ITERATIONS

    def __post_init__(self):
        if (self.targets is None) == (self.residual_ratio is None):
            raise RecoveryInputError("Give exactly one of `targets` or `residual_ratio`")
        if self.targets is not None and self.targets < 0:
            raise RecoveryInputError(f"Target count must be >= 0, got {self.targets}")
        if self.residual_ratio is not None and not 0.0 < self.residual_ratio < 1.0:
            raise RecoveryInputError(f"Residual ratio must be in (0, 1), got {self.residual_ratio}")
        if self.max_iterations < 1:
            raise RecoveryInputError("max_iterations must be >= 1")

    @property
    def iteration_cap(self) -> int:
        if self.targets is not None:
            return min(self.targets, self.max_iterations)
        return self.max_iterations


def _check_inputs(focused: FocusedTensor, dictionaries: Dictionaries) -> None:
    if focused.data.size == 0:
        raise RecoveryInputError("Focused tensor is empty")
    if focused.data.ndim != 4:
        raise RecoveryInputError(f"Focused tensor must be (M, Q, P, K), got shape {focused.data.shape}")
    M, Q, P, K = focused.data.shape
    params = dictionaries.params
    expected = {
        "M": (M, dictionaries.M),
        "Q": (Q, dictionaries.azimuth.shape[1]),
        "K": (K, dictionaries.kappa.size),
        "P": (P, params.P),
    }
    for name, (have, want) in expected.items():
        if have != want:
            raise RecoveryInputError(f"Focused tensor has {name}={have}, dictionaries expect {want}")
    if dictionaries.range_base.shape[1] != params.range_bins or dictionaries.azimuth.shape[2] != params.azimuth_bins:
        raise RecoveryInputError("Dictionary grid does not match its radar parameters")


def correlation_map(residual: np.ndarray, dictionaries: Dictionaries) -> np.ndarray:
    """
    Objective over all cells, shape (P, TR, TN).

    The azimuth side is a matrix product with conj(B^m); the range side is a
    zero-padded inverse FFT over kappa followed by the conjugate column phase.
    """
    params = dictionaries.params
    P = residual.shape[2]
    objective = np.zeros((P, params.azimuth_bins, params.range_bins))
    for u in range(P):
        objective[u] = _bin_objective(residual[:, :, u, :], dictionaries)
    return objective


def _bin_objective(residual_u: np.ndarray, dictionaries: Dictionaries, coherent: bool = False) -> np.ndarray:
    """
    Objective of one Doppler bin, shape (TR, TN), from its (M, Q, K) residual.

    coherent=True scores the stacked atom, |sum_m <atom_m, R_m>|^2, which keeps
    the transmitter phases the per-channel sum drops.
    """
    params = dictionaries.params
    TN, TR = params.range_bins, params.azimuth_bins
    kappa_cols = np.mod(dictionaries.kappa, TN)
    objective = np.zeros((TR, TN))
    stacked = np.zeros((TR, TN), dtype=complex)
    padded = np.zeros((TR, TN), dtype=complex)

    for m in range(residual_u.shape[0]):
        weighted = dictionaries.azimuth[m].conj().T @ residual_u[m]  # (TR, K)
        padded[:] = 0.0
        padded[:, kappa_cols] = weighted
        corr = np.fft.ifft(padded, axis=1) * TN * dictionaries.range_phase[m].conj()[np.newaxis, :]
        if coherent:
            stacked += corr
        else:
            objective += np.abs(corr) ** 2
    return np.abs(stacked) ** 2 if coherent else objective


def _refit_bin(
    data_u: np.ndarray,
    cells: List[GridIndex],
    dictionaries: Dictionaries,
) -> Tuple[np.ndarray, np.ndarray]:
    """Least squares on the cells of one Doppler bin. Returns (coefficients, residual (M, Q, K))."""
    M, Q, K = data_u.shape
    columns = np.empty((M * Q * K, len(cells)), dtype=complex)
    for j, cell in enumerate(cells):
        columns[:, j] = np.concatenate([atom(dictionaries, m, cell.s, cell.r).ravel() for m in range(M)])
    target = data_u.ravel()

    coef, _, rank, sing = np.linalg.lstsq(columns, target, rcond=None)
    if rank < len(cells) or sing[-1] <= _RANK_TOL * sing[0]:
        raise IllConditionedSupportError(
            f"Support of {len(cells)} cells in Doppler bin {cells[0].u} is rank deficient (rank {rank})"
        )
    residual = (target - columns @ coef).reshape(M, Q, K)
    return coef, residual


BinFit = Tuple[List[GridIndex], np.ndarray, np.ndarray]


def _fit_bin(data: np.ndarray, support: List[GridIndex], u: int, dictionaries: Dictionaries) -> BinFit:
    """(cells, coefficients, residual) of Doppler bin u for the support cells that fall in it."""
    cells = [cell for cell in support if cell.u == u]
    if not cells:
        return cells, np.zeros(0, dtype=complex), data[:, :, u, :].copy()
    coef, residual_u = _refit_bin(data[:, :, u, :], cells, dictionaries)
    return cells, coef, residual_u


def _top_cells(objective: np.ndarray, count: int) -> List[GridIndex]:
    """Highest-scoring finite cells, best first, lowest flat index on ties."""
    flat = objective.ravel()
    finite = np.flatnonzero(np.isfinite(flat))
    count = min(count, finite.size)
    if count == 0:
        return []
    picked = finite[np.argpartition(-flat[finite], count - 1)[:count]]
    picked = sorted(picked.tolist(), key=lambda i: (-flat[i], i))
    cells = []
    for index in picked:
        u, r, s = np.unravel_index(index, objective.shape)
        cells.append(GridIndex(s=int(s), r=int(r), u=int(u)))
    return cells


def _correct_support(
    data: np.ndarray,
    support: List[GridIndex],
    coefficients: Dict[GridIndex, complex],
    residual: np.ndarray,
    dictionaries: Dictionaries,
    sweeps: int,
) -> int:
    """
    Single-swap local search on the greedy support, in place.

    Each slot in turn is vacated. The cells with the best stacked-atom score
    on the residual without it compete for the slot, and the one with the
    lowest joint least-squares residual takes it if that beats the current
    residual.
    Returns the number of swaps made.
    """
    tol = _SWAP_TOL * float(np.linalg.norm(data))
    P = data.shape[2]
    objective = np.stack([_bin_objective(residual[:, :, u, :], dictionaries, coherent=True) for u in range(P)])
    swaps = 0

    for _ in range(sweeps):
        swapped = False
        for position, leaving in enumerate(list(support)):
            current = float(np.linalg.norm(residual))
            if current <= tol:
                return swaps
            kept = support[:position] + support[position + 1:]
            vacated = _fit_bin(data, kept, leaving.u, dictionaries)

            scores = objective.copy()
            scores[leaving.u] = _bin_objective(vacated[2], dictionaries, coherent=True)
            for cell in kept:
                scores[cell.u, cell.r, cell.s] = -np.inf
            energy = current ** 2 - np.linalg.norm(residual[:, :, leaving.u, :]) ** 2 \
                + np.linalg.norm(vacated[2]) ** 2

            best: Optional[Tuple[float, GridIndex, BinFit]] = None
            for entering in _top_cells(scores, _SWAP_CANDIDATES):
                if entering == leaving:
                    continue
                try:
                    fit = _fit_bin(data, kept + [entering], entering.u, dictionaries)
                except IllConditionedSupportError:
                    continue
                before = vacated[2] if entering.u == leaving.u else residual[:, :, entering.u, :]
                trial = energy - np.linalg.norm(before) ** 2 + np.linalg.norm(fit[2]) ** 2
                if best is None or trial < best[0]:
                    best = (trial, entering, fit)

            if best is None or np.sqrt(max(best[0], 0.0)) >= current - tol:
                continue
            _, entering, fit = best
            support[position] = entering
            coefficients.pop(leaving, None)
            for u, (cells_u, coef, residual_u) in {leaving.u: vacated, entering.u: fit}.items():
                residual[:, :, u, :] = residual_u
                objective[u] = _bin_objective(residual_u, dictionaries, coherent=True)
                for cell, value in zip(cells_u, coef):
                    coefficients[cell] = complex(value)
            swaps += 1
            swapped = True
            logger.debug(f"Support swap: (s={leaving.s}, r={leaving.r}, u={leaving.u}) -> "
                         f"(s={entering.s}, r={entering.r}, u={entering.u})")
        if not swapped:
            break
    return swaps


def recover(
    focused: FocusedTensor,
    dictionaries: Dictionaries,
    stop: StopCriterion,
    *,
    swap_sweeps: int = config.SUPPORT_SWAP_SWEEPS,
) -> RecoveryResult:
    """
    Greedy joint-sparse recovery followed by up to `swap_sweeps` support-correction sweeps.

    Returns:
        RecoveryResult with support in selection order, amplitudes
        alpha_hat = coefficient / (gamma * P), estimates on the coarse grid and
        the residual norm before the first and after every iteration;
        the last entry is taken after support correction

    Raises:
        RecoveryInputError: empty tensor or shape mismatch
        IllConditionedSupportError: the accumulated support system is rank deficient
    """
    _check_inputs(focused, dictionaries)
    params = dictionaries.params
    data = focused.data
    P = data.shape[2]
    max_atoms = P * params.azimuth_bins * params.range_bins

    residual = data.copy()
    initial_norm = float(np.linalg.norm(data))
    residuals = [initial_norm]
    support: List[GridIndex] = []
    coefficients: Dict[GridIndex, complex] = {}
    selected_at: List[int] = []

    cap = min(stop.iteration_cap, max_atoms)
    for iteration in range(1, cap + 1):
        if stop.residual_ratio is not None:
            if initial_norm == 0.0 or residuals[-1] / initial_norm < stop.residual_ratio:
                break

        objective = correlation_map(residual, dictionaries)
        for cell in support:
            objective[cell.u, cell.r, cell.s] = -np.inf
        u, r, s = np.unravel_index(int(np.argmax(objective)), objective.shape)
        chosen = GridIndex(s=int(s), r=int(r), u=int(u))
        support.append(chosen)
        selected_at.append(iteration)

        cells_u = [cell for cell in support if cell.u == chosen.u]
        coef, residual_u = _refit_bin(data[:, :, chosen.u, :], cells_u, dictionaries)
        for cell, value in zip(cells_u, coef):
            coefficients[cell] = complex(value)
        residual[:, :, chosen.u, :] = residual_u

        residuals.append(float(np.linalg.norm(residual)))
        logger.debug(f"SOMP iter {iteration}: cell (s={chosen.s}, r={chosen.r}, u={chosen.u}) "
                     f"residual {residuals[-1]:.4g}")

    if swap_sweeps > 0 and support:
        swaps = _correct_support(data, support, coefficients, residual, dictionaries, swap_sweeps)
        if swaps:
            residuals[-1] = float(np.linalg.norm(residual))
            logger.debug(f"Support correction: {swaps} swaps, residual {residuals[-1]:.4g}")

    scale = focused.gamma * P
    amplitudes = np.array([coefficients[cell] / scale for cell in support], dtype=complex)
    return RecoveryResult(
        support=tuple(support),
        amplitudes=amplitudes,
        estimates=estimate_parameters(support, params),
        residuals=tuple(residuals),
        iterations=tuple(selected_at),
        params=params,
    )
