"""
Data models for the CogRadar toolkit.
Defines the records passed between array geometry, spectrum, scene, synthesis,
recovery and evaluation stages.
"""
import dataclasses
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, List, Optional, Tuple

import numpy as np

import config
from utils.errors import ConfigurationError


class Mode(IntEnum):
    """Antenna constellations of the prototype."""
    MODE1 = 1  # uniform Nyquist 8x10 (virtual ULA)
    MODE2 = 2  # random 8x10 in the same aperture
    MODE3 = 3  # thinned random 4x5
    MODE4 = 4  # random 8x10 in the 20x20 reference aperture

    @classmethod
    def parse(cls, value) -> "Mode":
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise ConfigurationError(f"Unsupported array mode: {value!r} (expected 1-4)") from None


@dataclass(frozen=True)
class RadarParams:
    """
    Global radar constants. N defaults to round(B_h * tau).

    The carrier wavelength lambda = c / f_c is the `wavelength` property, not a field.
    """
    T: int
    R: int
    tau: float
    P: int
    B_h: float
    f_c: float
    N: Optional[int] = None

    def __post_init__(self):
        if self.N is None:
            object.__setattr__(self, "N", int(round(self.B_h * self.tau)))
        if self.T < 1 or self.R < 1 or self.P < 1:
            raise ConfigurationError(f"T, R and P must be >= 1 (got T={self.T}, R={self.R}, P={self.P})")
        if self.tau <= 0 or self.B_h <= 0 or self.f_c <= 0:
            raise ConfigurationError("PRI, bandwidth and carrier must be positive")
        if self.B_h * self.tau < 1:
            raise ConfigurationError(f"B_h * tau = {self.B_h * self.tau:g} must be >= 1")
        if self.N < 1:
            raise ConfigurationError(f"N must be >= 1 (got {self.N})")

    @property
    def wavelength(self) -> float:
        return config.SPEED_OF_LIGHT / self.f_c

    @property
    def range_bins(self) -> int:
        return self.T * self.N

    @property
    def azimuth_bins(self) -> int:
        return self.T * self.R

    @property
    def doppler_bins(self) -> int:
        return self.P

    @property
    def delay_cell(self) -> float:
        """tau / (TN), equal to 1/(T B_h) when N = B_h tau."""
        return self.tau / self.range_bins

    @property
    def azimuth_cell(self) -> float:
        return 2.0 / self.azimuth_bins

    @property
    def doppler_cell(self) -> float:
        return 1.0 / (self.P * self.tau)

    @property
    def range_cell_m(self) -> float:
        return config.SPEED_OF_LIGHT * self.delay_cell / 2.0

    @property
    def unambiguous_range_m(self) -> float:
        return config.SPEED_OF_LIGHT * self.tau / 2.0

    @property
    def max_velocity_mps(self) -> float:
        return self.wavelength / (4.0 * self.tau)

    def replace(self, **changes) -> "RadarParams":
        if "B_h" in changes or "tau" in changes:
            changes.setdefault("N", None)
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class ArrayConfig:
    """Element positions in wavelengths; tx_slots are the FDM slots used by each transmitter."""
    mode: Mode
    xi: Tuple[float, ...]
    zeta: Tuple[float, ...]
    Z: float
    tx_slots: Tuple[int, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        if len(self.tx_slots) != len(self.xi):
            raise ConfigurationError(
                f"{len(self.xi)} transmitters but {len(self.tx_slots)} FDM slots"
            )
        for name, positions in (("xi", self.xi), ("zeta", self.zeta)):
            if not positions:
                raise ConfigurationError(f"Array has no {name} elements")
            if min(positions) < 0.0 or max(positions) > self.Z + 1e-12:
                raise ConfigurationError(f"{name} positions must lie within [0, {self.Z}]")

    @property
    def M(self) -> int:
        return len(self.xi)

    @property
    def Q(self) -> int:
        return len(self.zeta)


@dataclass(frozen=True)
class CognitiveSpectrum:
    """Subband set inside one transmit slot and the coefficient indices it induces."""
    B_h: float
    bands: Tuple[Tuple[float, float], ...]
    gamma: float
    kappa: np.ndarray
    tau: float

    @property
    def K(self) -> int:
        return int(self.kappa.size)

    @property
    def occupied_bandwidth(self) -> float:
        return float(sum(stop - start for start, stop in self.bands))

    @property
    def is_cognitive(self) -> bool:
        return not (len(self.bands) == 1 and self.bands[0][0] <= 0.0 and self.bands[0][1] >= self.B_h)


@dataclass(frozen=True)
class TxPlan:
    f_m: Tuple[float, ...]
    guard: float
    slots: Tuple[int, ...]

    @property
    def M(self) -> int:
        return len(self.f_m)


@dataclass(frozen=True)
class AliasMap:
    q_factor: float
    modulus: int
    kappa: np.ndarray
    folded: np.ndarray
    injective: bool


@dataclass(frozen=True)
class Target:
    """Point target; vartheta is the sine of azimuth, f_D the Doppler frequency."""
    alpha: complex
    tau_l: float
    vartheta: float
    f_D: float


@dataclass(frozen=True, order=True)
class GridIndex:
    s: int  # range bin
    r: int  # azimuth bin
    u: int  # Doppler bin


@dataclass(frozen=True)
class TargetScene:
    targets: Tuple[Target, ...] = ()
    grid: Optional[Tuple[GridIndex, ...]] = None

    @property
    def L(self) -> int:
        return len(self.targets)

    def merged(self, other: "TargetScene") -> "TargetScene":
        grid = None
        if self.grid is not None and other.grid is not None:
            grid = self.grid + other.grid
        return TargetScene(targets=self.targets + other.targets, grid=grid)


@dataclass(frozen=True)
class CoefficientTensor:
    """Fourier coefficients indexed (m, q, p, k over kappa)."""
    data: np.ndarray
    kappa: np.ndarray
    params: RadarParams
    gamma: float = 1.0

    @property
    def shape(self) -> Tuple[int, int, int, int]:
        return tuple(self.data.shape)

    def with_data(self, data: np.ndarray) -> "CoefficientTensor":
        return dataclasses.replace(self, data=data)


@dataclass(frozen=True)
class NoiseSpec:
    """
    snr_db may be +inf (no noise). power_reference="transmit" measures signal power
    as if the transmitter were non-cognitive (clean power / gamma^2).
    """
    snr_db: float
    seed: int
    power_reference: str = "tensor"
    snr_loss_db: float = 0.0


@dataclass(frozen=True)
class AdcSpec:
    P_sat: float   # dBm
    b: int         # bits
    E_NoB: float   # effective bits
    f_s: float     # Hz
    BW: float      # reference bandwidth, Hz

    def __post_init__(self):
        if self.E_NoB > self.b:
            raise ConfigurationError(f"E_NoB ({self.E_NoB}) cannot exceed bits ({self.b})")
        if self.f_s <= 0:
            raise ConfigurationError("ADC sample rate must be positive")


@dataclass(frozen=True)
class Dictionaries:
    """
    Range dictionaries A^m = range_base * diag(range_phase[m]) (K x TN) and
    azimuth dictionaries B^m = azimuth[m] (Q x TR).
    """
    range_base: np.ndarray
    range_phase: np.ndarray
    azimuth: np.ndarray
    kappa: np.ndarray
    params: RadarParams
    betas: Optional[np.ndarray] = None    # (M, Q) array phase parameters
    carriers: Optional[np.ndarray] = None  # f_m per transmitter, Hz

    def range_matrix(self, m: int) -> np.ndarray:
        return self.range_base * self.range_phase[m][np.newaxis, :]

    @property
    def A(self) -> List[np.ndarray]:
        return [self.range_matrix(m) for m in range(self.range_phase.shape[0])]

    @property
    def B(self) -> List[np.ndarray]:
        return [self.azimuth[m] for m in range(self.azimuth.shape[0])]

    @property
    def M(self) -> int:
        return int(self.range_phase.shape[0])


@dataclass(frozen=True)
class FocusedTensor:
    """Doppler-focused coefficients Phi indexed (m, q, u, k)."""
    data: np.ndarray
    kappa: np.ndarray
    params: RadarParams
    gamma: float
    frequencies: np.ndarray


@dataclass(frozen=True)
class TargetEstimate:
    tau: float
    vartheta: float
    f_D: float


@dataclass(frozen=True)
class RecoveryResult:
    support: Tuple[GridIndex, ...]
    amplitudes: np.ndarray
    estimates: Tuple[TargetEstimate, ...]
    residuals: Tuple[float, ...]
    iterations: Tuple[int, ...]
    params: RadarParams
    refine_factor: int = 0

    @property
    def L(self) -> int:
        return len(self.support)


@dataclass
class DetectionReport:
    """Index pairs are (truth index, estimate index)."""
    hits: List[Tuple[int, int]]
    misses: List[int]
    false_alarms: List[int]
    strict_hits: List[Tuple[int, int]]
    truth_bins: List[GridIndex] = field(default_factory=list)
    estimate_bins: List[GridIndex] = field(default_factory=list)

    @property
    def n_truth(self) -> int:
        return len(self.hits) + len(self.misses)

    @property
    def probability_of_detection(self) -> float:
        return len(self.hits) / self.n_truth if self.n_truth else 1.0

    @property
    def outcome(self) -> str:
        return f"{len(self.hits)}/{self.n_truth}"


@dataclass
class ConfigurationStats:
    label: str
    trials: int
    histogram: Dict[str, float]
    mean_pd: float
    mean_strict_pd: float
    mean_false_alarms: float
    failures: int = 0


@dataclass
class ExperimentStats:
    trials: int
    configurations: Dict[str, ConfigurationStats]
    seeds: Dict[str, int] = field(default_factory=dict)
