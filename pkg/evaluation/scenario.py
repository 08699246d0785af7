"""
Scenario files.

A scenario is one YAML document with the sections radar, array, spectrum,
scene, noise, recovery, experiment and output. Every field has a default taken
from config.py, so an empty file describes the hardware prototype.
"""
import math
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

import config
from models.data_models import CognitiveSpectrum, Mode, NoiseSpec, RadarParams
from recovery.recovery_engine.somp import StopCriterion
from scene.generator import Separation
from synthesis.budgets import snr_loss_db
from utils.errors import ArtifactIOError, ConfigurationError
from utils.logging_utils import setup_logger
from waveform.spectrum import build_cognitive_spectrum, full_band_spectrum

logger = setup_logger(__name__)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RadarSection(_Section):
    T: int = Field(config.NUM_TX, ge=1)
    R: int = Field(config.NUM_RX, ge=1)
    tau: float = Field(config.PRI_SECONDS, gt=0)
    P: int = Field(config.PULSES_PER_CPI, ge=1)
    B_h: float = Field(config.TX_BANDWIDTH_HZ, gt=0)
    f_c: float = Field(config.CARRIER_HZ, gt=0)
    guard: float = Field(config.GUARD_BAND_HZ, ge=0)


class ArraySection(_Section):
    seed: int = config.ARRAY_SEED
    n_tx: Optional[int] = Field(None, ge=1)
    n_rx: Optional[int] = Field(None, ge=1)
    aperture: Optional[float] = Field(None, gt=0)
    min_spacing: float = Field(config.MIN_ELEMENT_SPACING, ge=0)


class SpectrumSection(_Section):
    # None selects the prototype subbands
    bands: Optional[List[List[float]]] = None
    # receiver acquires only the subband coefficients
    sub_nyquist: bool = True
    sample_rate_hz: float = Field(config.ADC_SAMPLE_RATE_HZ, gt=0)
    check_aliasing: bool = True

    @field_validator("bands")
    @classmethod
    def _pairs(cls, value):
        if value is not None and any(len(band) != 2 for band in value):
            raise ValueError("every band must be [start_Hz, stop_Hz]")
        return value


class SceneSection(_Section):
    source: Literal["random", "closely_spaced", "file"] = "random"
    path: Optional[str] = None
    targets: int = Field(config.DEFAULT_TARGETS, ge=0)
    min_azimuth_separation: float = Field(config.MIN_AZIMUTH_SEPARATION, ge=0)
    amplitude_db_range: Optional[List[float]] = None
    centers: List[float] = Field(default_factory=lambda: [-0.30, 0.40])
    pair_separation: float = Field(0.02, gt=0)

    @model_validator(mode="after")
    def _source_fields(self):
        if self.source == "file" and not self.path:
            raise ValueError("scene.path is required when scene.source is 'file'")
        if self.amplitude_db_range is not None and len(self.amplitude_db_range) != 2:
            raise ValueError("scene.amplitude_db_range must be [low_dB, high_dB]")
        return self


class NoiseSection(_Section):
    snr_db: float = math.inf
    power_reference: Literal["tensor", "transmit"] = "transmit"
    # None: ideal anti-alias filters, no folded noise
    stopband_attenuation_db: Optional[float] = None

    @field_validator("snr_db")
    @classmethod
    def _not_nan(cls, value):
        if math.isnan(value):
            raise ValueError("snr_db must be a number or .inf")
        return value


class RecoverySection(_Section):
    # None: stop after the true target count
    residual_ratio: Optional[float] = Field(None, gt=0, lt=1)
    max_iterations: int = Field(config.MAX_OMP_ITERATIONS, ge=1)
    refine_factor: int = Field(config.REFINE_FACTOR, ge=0)
    swap_sweeps: int = Field(config.SUPPORT_SWAP_SWEEPS, ge=0)


class ConfigurationSpec(_Section):
    mode: int = Field(ge=1, le=4)
    cognitive: bool = False

    @property
    def label(self) -> str:
        return f"mode{self.mode}_{'cog' if self.cognitive else 'noncog'}"


def _default_configurations() -> List[ConfigurationSpec]:
    return [ConfigurationSpec(mode=m) for m in (1, 2, 3, 4)] + [ConfigurationSpec(mode=3, cognitive=True)]


class ExperimentSection(_Section):
    trials: int = Field(config.DEFAULT_TRIALS, ge=1)
    master_seed: int = Field(config.MASTER_SEED, ge=0)
    workers: int = Field(config.WORKERS, ge=1)
    configurations: List[ConfigurationSpec] = Field(default_factory=_default_configurations)

    @field_validator("configurations")
    @classmethod
    def _unique(cls, value):
        labels = [spec.label for spec in value]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate configurations: {labels}")
        if not value:
            raise ValueError("at least one configuration is required")
        return value


class OutputSection(_Section):
    base_dir: str = str(config.OUTPUT_BASE)
    run_id: Optional[str] = None


class ScenarioConfig(_Section):
    radar: RadarSection = Field(default_factory=RadarSection)
    array: ArraySection = Field(default_factory=ArraySection)
    spectrum: SpectrumSection = Field(default_factory=SpectrumSection)
    scene: SceneSection = Field(default_factory=SceneSection)
    noise: NoiseSection = Field(default_factory=NoiseSection)
    recovery: RecoverySection = Field(default_factory=RecoverySection)
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _consistent(self):
        radar = self.radar
        if radar.B_h * radar.tau < 1:
            raise ValueError(f"B_h * tau = {radar.B_h * radar.tau:g} must be >= 1")
        if radar.guard >= radar.B_h:
            raise ValueError("guard band must be narrower than the transmit slot")
        if any(spec.mode == 3 for spec in self.experiment.configurations) and (radar.T % 2 or radar.R % 2):
            raise ValueError("Mode 3 needs even T and R")
        bands = self.spectrum.bands
        if bands is not None and any(stop > radar.B_h or start < 0 for start, stop in bands):
            raise ValueError("spectrum bands must lie inside [0, B_h)")
        return self

    # --- derived objects ---

    def radar_params(self) -> RadarParams:
        r = self.radar
        return RadarParams(T=r.T, R=r.R, tau=r.tau, P=r.P, B_h=r.B_h, f_c=r.f_c)

    def subband_spectrum(self, params: Optional[RadarParams] = None) -> CognitiveSpectrum:
        params = params or self.radar_params()
        bands = self.spectrum.bands if self.spectrum.bands is not None else config.prototype_bands()
        return build_cognitive_spectrum(params.B_h, bands, params.tau)

    def receiver_kappa(self, params: Optional[RadarParams] = None) -> np.ndarray:
        params = params or self.radar_params()
        if self.spectrum.sub_nyquist:
            return self.subband_spectrum(params).kappa
        return full_band_spectrum(params).kappa

    def transmit_spectrum(self, cognitive: bool, params: Optional[RadarParams] = None) -> CognitiveSpectrum:
        params = params or self.radar_params()
        return self.subband_spectrum(params) if cognitive else full_band_spectrum(params)

    def separation(self) -> Separation:
        return Separation(azimuth=self.scene.min_azimuth_separation)

    def stop_criterion(self, targets: int) -> StopCriterion:
        if self.recovery.residual_ratio is not None:
            return StopCriterion(residual_ratio=self.recovery.residual_ratio,
                                 max_iterations=self.recovery.max_iterations)
        return StopCriterion(targets=targets, max_iterations=self.recovery.max_iterations)

    def noise_spec(self, seed: int, q_factor: float = config.SUBSAMPLING_Q) -> NoiseSpec:
        loss = 0.0
        if self.noise.stopband_attenuation_db is not None:
            loss = snr_loss_db(q_factor, self.noise.stopband_attenuation_db)
        return NoiseSpec(
            snr_db=self.noise.snr_db,
            seed=seed,
            power_reference=self.noise.power_reference,
            snr_loss_db=loss,
        )

    def with_overrides(self, **sections: Dict[str, object]) -> "ScenarioConfig":
        """Return a validated copy with per-section field overrides (None values are skipped)."""
        data = self.model_dump()
        for section, fields in sections.items():
            for key, value in fields.items():
                if value is not None:
                    data[section][key] = value
        return parse_scenario(data)


def parse_scenario(data: Optional[dict]) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(data or {})
    except ValidationError as exc:
        raise ConfigurationError(f"Invalid scenario: {exc}") from exc


def load_scenario(path: Optional[Union[str, Path]] = None) -> ScenarioConfig:
    """Read a scenario YAML; None gives the built-in prototype defaults."""
    if path is None:
        return parse_scenario({})
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigurationError(f"Cannot read scenario {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"Scenario {path} is not valid YAML: {exc}") from exc
    if data is not None and not isinstance(data, dict):
        raise ConfigurationError(f"Scenario {path} must be a mapping of sections")
    logger.info(f"Loaded scenario: {path}")
    return parse_scenario(data)


def write_manifest(scenario: ScenarioConfig, seeds: Dict[str, object], path: Path) -> Path:
    """Resolved scenario plus every seed used, as YAML."""
    path = Path(path)
    document = {"scenario": scenario.model_dump(), "seeds": seeds}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(document, f, sort_keys=True, default_flow_style=False)
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write manifest {path}: {exc}") from exc
    return path
