"""
Monte-Carlo experiments over array configurations.

A configuration is an (array mode, cognitive transmitter) pair. Every trial
draws one scene and one noise seed from the master seed and runs all
configurations on them (paired comparison). The receiver acquires the same
coefficient set in every configuration; a cognitive transmitter concentrates
the fixed transmit power into those subbands, a non-cognitive one spreads it
over the whole slot.
"""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

import config
from array_geometry.conditions import check_recovery_conditions
from array_geometry.constellations import build_array, grid_params, virtual_positions
from evaluation.matching import match_detections
from evaluation.scenario import ConfigurationSpec, ScenarioConfig
from models.data_models import (
    ArrayConfig,
    CognitiveSpectrum,
    ConfigurationStats,
    DetectionReport,
    ExperimentStats,
    NoiseSpec,
    RadarParams,
    RecoveryResult,
    TargetScene,
    TxPlan,
)
from recovery.recovery_engine.recovery_controller import RecoveryController
from scene.generator import closely_spaced_scene, random_scene
from scene.scene_io import read_scene
from synthesis.noise import add_noise
from synthesis.xampling import synthesize
from utils.errors import ExperimentError
from utils.logging_utils import log_seeds, setup_logger
from waveform.subsampling import alias_map
from waveform.tx_plan import build_tx_plan

logger = setup_logger(__name__)


@dataclass
class ConfigurationContext:
    """Everything fixed across trials for one configuration."""
    spec: ConfigurationSpec
    params: RadarParams
    grid: RadarParams
    array: ArrayConfig
    plan: TxPlan
    tx_spectrum: CognitiveSpectrum
    kappa: np.ndarray
    controller: RecoveryController

    @property
    def label(self) -> str:
        return self.spec.label


def array_seed(scenario: ScenarioConfig, mode: int) -> int:
    return scenario.array.seed + int(mode)


def build_configuration(scenario: ScenarioConfig, spec: ConfigurationSpec) -> ConfigurationContext:
    """
    Raises:
        ConfigurationError: array or grid cannot be built
        AliasCollisionError: the receiver's coefficients fold onto each other
    """
    params = scenario.radar_params()
    array = build_array(
        params,
        spec.mode,
        array_seed(scenario, spec.mode),
        n_tx=scenario.array.n_tx,
        n_rx=scenario.array.n_rx,
        aperture=scenario.array.aperture,
        min_spacing=scenario.array.min_spacing,
    )
    grid = grid_params(params, array)
    plan = build_tx_plan(params, array, scenario.radar.guard)
    tx_spectrum = scenario.transmit_spectrum(spec.cognitive, params)
    kappa = scenario.receiver_kappa(params)
    if scenario.spectrum.sub_nyquist and scenario.spectrum.check_aliasing:
        alias_map(kappa, params.N, scenario.spectrum.sample_rate_hz, params.tau)

    controller = RecoveryController(
        grid,
        array,
        plan,
        kappa,
        scenario.stop_criterion(scenario.scene.targets),
        refine_factor=scenario.recovery.refine_factor,
        swap_sweeps=scenario.recovery.swap_sweeps,
    )
    virtual = virtual_positions(array)
    conditions = check_recovery_conditions(array.M, array.Q, kappa.size, params.P, scenario.scene.targets)
    logger.info(f"Configuration {spec.label}: M={array.M} Q={array.Q} K={kappa.size} "
                f"gamma={tx_spectrum.gamma:.4f} azimuth bins={grid.azimuth_bins} "
                f"virtual aperture={virtual[-1] - virtual[0]:g}")
    if not conditions.all_ok:
        logger.warning(f"Configuration {spec.label}: {conditions.summary()}")
    return ConfigurationContext(spec, params, grid, array, plan, tx_spectrum, kappa, controller)


def draw_scene(scenario: ScenarioConfig, params: RadarParams, seed: int) -> TargetScene:
    source = scenario.scene.source
    if source == "random":
        amp = scenario.scene.amplitude_db_range
        return random_scene(
            scenario.scene.targets,
            params,
            scenario.separation(),
            seed,
            amplitude_db_range=tuple(amp) if amp is not None else None,
        )
    if source == "closely_spaced":
        return closely_spaced_scene(
            params,
            centers=scenario.scene.centers,
            separation=scenario.scene.pair_separation,
        )
    return read_scene(Path(scenario.scene.path), params)


def run_configuration(
    ctx: ConfigurationContext,
    scenario: ScenarioConfig,
    scene: TargetScene,
    noise: NoiseSpec,
) -> Tuple[DetectionReport, RecoveryResult]:
    """Synthesize, add noise, recover and match one scene in one configuration."""
    tensor = synthesize(scene, ctx.array, ctx.plan, ctx.tx_spectrum, ctx.grid, kappa=ctx.kappa)
    noisy = add_noise(tensor, noise)
    result = ctx.controller.run(noisy, scenario.stop_criterion(scene.L))
    return match_detections(scene, result, ctx.grid), result


def trial_seeds(master_seed: int, n_trials: int) -> List[Dict[str, int]]:
    """Independent (scene, noise) seed pairs, one per trial, split from the master seed."""
    children = np.random.SeedSequence(master_seed).spawn(n_trials)
    seeds = []
    for child in children:
        scene_seed, noise_seed = child.generate_state(2)
        seeds.append({"scene": int(scene_seed), "noise": int(noise_seed)})
    return seeds


TrialOutcome = Dict[str, Union[DetectionReport, str]]


def run_trial(
    trial: int,
    seeds: Dict[str, int],
    contexts: Sequence[ConfigurationContext],
    scenario: ScenarioConfig,
) -> TrialOutcome:
    """One trial across all configurations; failures are returned as messages."""
    log_seeds(logger, f"trial {trial} ({len(contexts)} configurations)", seeds)
    outcome: TrialOutcome = {}
    try:
        scene = draw_scene(scenario, contexts[0].params, seeds["scene"])
    except Exception as exc:  # noqa: BLE001
        logger.warning(f"Trial {trial}: scene generation failed: {exc}")
        return {ctx.label: f"scene: {exc}" for ctx in contexts}

    noise = scenario.noise_spec(seeds["noise"])
    for ctx in contexts:
        try:
            report, _ = run_configuration(ctx, scenario, scene, noise)
            outcome[ctx.label] = report
        except Exception as exc:  # noqa: BLE001
            logger.warning(f"Trial {trial} {ctx.label} failed: {exc}")
            outcome[ctx.label] = str(exc)
    return outcome


# Worker-process state for pooled trials
_WORKER: Dict[str, object] = {}


def _init_worker(scenario: ScenarioConfig, specs: List[ConfigurationSpec]) -> None:
    _WORKER["scenario"] = scenario
    _WORKER["contexts"] = [build_configuration(scenario, spec) for spec in specs]


def _pooled_trial(job: Tuple[int, Dict[str, int]]) -> TrialOutcome:
    trial, seeds = job
    return run_trial(trial, seeds, _WORKER["contexts"], _WORKER["scenario"])


def summarize(label: str, outcomes: Sequence[TrialOutcome]) -> ConfigurationStats:
    reports = [o[label] for o in outcomes if isinstance(o[label], DetectionReport)]
    failures = len(outcomes) - len(reports)
    if not reports:
        return ConfigurationStats(label, 0, {}, 0.0, 0.0, 0.0, failures)

    counts = Counter(r.outcome for r in reports)
    ordered = sorted(counts, key=lambda key: (-int(key.split("/")[0]), key))
    histogram = {key: counts[key] / len(reports) for key in ordered}

    def _strict_pd(r: DetectionReport) -> float:
        return len(r.strict_hits) / r.n_truth if r.n_truth else 1.0

    return ConfigurationStats(
        label=label,
        trials=len(reports),
        histogram=histogram,
        mean_pd=float(np.mean([r.probability_of_detection for r in reports])),
        mean_strict_pd=float(np.mean([_strict_pd(r) for r in reports])),
        mean_false_alarms=float(np.mean([len(r.false_alarms) for r in reports])),
        failures=failures,
    )


def run_experiment(
    scenario: ScenarioConfig,
    n_trials: Optional[int] = None,
    master_seed: Optional[int] = None,
    *,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentStats:
    """
    Paired Monte-Carlo trials over the scenario's configurations.

    Raises:
        ExperimentError: more than MAX_TRIAL_FAILURE_RATE of the trials failed
            in some configuration
    """
    n_trials = scenario.experiment.trials if n_trials is None else n_trials
    master_seed = scenario.experiment.master_seed if master_seed is None else master_seed
    workers = scenario.experiment.workers if workers is None else workers
    specs = list(scenario.experiment.configurations)
    if n_trials < 1:
        raise ExperimentError(f"Need at least one trial, got {n_trials}")

    seeds = trial_seeds(master_seed, n_trials)
    logger.info(f"Experiment: {n_trials} trials, master seed {master_seed}, "
                f"configurations {[s.label for s in specs]}, workers={workers}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(scenario, specs)) as pool:
            jobs = pool.map(_pooled_trial, list(enumerate(seeds)))
            outcomes = list(tqdm(jobs, total=n_trials, desc="trials", disable=not progress))
    else:
        contexts = [build_configuration(scenario, spec) for spec in specs]
        outcomes = [
            run_trial(trial, trial_seed, contexts, scenario)
            for trial, trial_seed in tqdm(list(enumerate(seeds)), desc="trials", disable=not progress)
        ]

    configurations = {spec.label: summarize(spec.label, outcomes) for spec in specs}
    for stats in configurations.values():
        rate = stats.failures / n_trials
        if rate > config.MAX_TRIAL_FAILURE_RATE:
            raise ExperimentError(
                f"{stats.label}: {stats.failures}/{n_trials} trials failed "
                f"(limit {config.MAX_TRIAL_FAILURE_RATE:.0%})"
            )
        if stats.failures:
            logger.warning(f"{stats.label}: {stats.failures} failed trials excluded from the statistics")

    experiment_seeds = {"master_seed": int(master_seed)}
    for spec in specs:
        experiment_seeds[f"array_seed_mode{spec.mode}"] = array_seed(scenario, spec.mode)
    return ExperimentStats(trials=n_trials, configurations=configurations, seeds=experiment_seeds)
