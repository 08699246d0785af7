"""
CSV reports: experiment statistics, detection histograms and the receiver
budget (SNR loss, dynamic range, grid constants, aliasing, coherence and
resource reduction).
"""
import csv
from pathlib import Path
from typing import List, Sequence, Tuple

import config
from array_geometry.constellations import build_array
from evaluation.scenario import ScenarioConfig
from models.data_models import ExperimentStats, Mode
from synthesis.budgets import (
    dynamic_range,
    dynamic_range_floor,
    prototype_adc,
    prototype_resource_tables,
    snr_loss_db,
)
from utils.errors import ArtifactIOError
from utils.logging_utils import setup_logger
from waveform.coherence import range_coherence_report
from waveform.subsampling import alias_map, folded_intervals
from waveform.tx_plan import build_tx_plan

logger = setup_logger(__name__)

SUMMARY_COLUMNS = ("configuration", "trials", "failures", "mean_pd", "mean_strict_pd", "mean_false_alarms")
HISTOGRAM_COLUMNS = ("configuration", "outcome", "fraction")
BUDGET_COLUMNS = ("section", "quantity", "value", "unit")

Row = Tuple[object, ...]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_rows(path: Path, columns: Sequence[str], rows: Sequence[Row]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write report {path}: {exc}") from exc
    return path


def write_stats(stats: ExperimentStats, summary_path: Path, histogram_path: Path) -> Tuple[Path, Path]:
    summary, histogram = [], []
    for label, cfg in stats.configurations.items():
        summary.append((label, cfg.trials, cfg.failures, cfg.mean_pd, cfg.mean_strict_pd, cfg.mean_false_alarms))
        for outcome, fraction in cfg.histogram.items():
            histogram.append((label, outcome, fraction))
    return (
        write_rows(summary_path, SUMMARY_COLUMNS, summary),
        write_rows(histogram_path, HISTOGRAM_COLUMNS, histogram),
    )


def format_comparison(stats: ExperimentStats) -> str:
    lines = [f"{'configuration':<16} {'P_d':>7} {'strict':>7} {'FA':>6}  histogram"]
    for label, cfg in stats.configurations.items():
        top = ", ".join(f"{k}:{v:.0%}" for k, v in list(cfg.histogram.items())[:4])
        lines.append(f"{label:<16} {cfg.mean_pd:>7.3f} {cfg.mean_strict_pd:>7.3f} {cfg.mean_false_alarms:>6.2f}  {top}")
    return "\n".join(lines)


def budget_rows(scenario: ScenarioConfig) -> List[Row]:
    params = scenario.radar_params()
    rows: List[Row] = []

    attenuation = scenario.noise.stopband_attenuation_db
    if attenuation is None:
        attenuation = config.STOPBAND_ATTENUATION_DB
    rows.append(("snr", "q_factor", config.SUBSAMPLING_Q, ""))
    rows.append(("snr", "stopband_attenuation", float(attenuation), "dB"))
    rows.append(("snr", "snr_loss", snr_loss_db(config.SUBSAMPLING_Q, attenuation), "dB"))

    adc = prototype_adc()
    dr, dr_low = dynamic_range(adc)
    rows.append(("adc", "dynamic_range", dr, "dB"))
    rows.append(("adc", "dynamic_range_low", dr_low, "dBm"))
    rows.append(("adc", "floor_effective_bits", dynamic_range_floor(adc), "dBm"))
    rows.append(("adc", "floor_ideal_bits", dynamic_range_floor(adc, ideal_bits=True), "dBm"))

    rows.append(("grid", "range_cell", params.range_cell_m, "m"))
    rows.append(("grid", "azimuth_cell", params.azimuth_cell, "sine"))
    rows.append(("grid", "azimuth_cell_reference", 1.0 / config.MODE4_APERTURE, "sine"))
    rows.append(("grid", "unambiguous_range", params.unambiguous_range_m, "m"))
    rows.append(("grid", "max_velocity", params.max_velocity_mps, "m/s"))

    spectrum = scenario.subband_spectrum(params)
    rows.append(("spectrum", "gamma", spectrum.gamma, ""))
    rows.append(("spectrum", "K", spectrum.K, ""))
    rows.append(("spectrum", "occupied_bandwidth", spectrum.occupied_bandwidth, "Hz"))

    amap = alias_map(spectrum.kappa, params.N, scenario.spectrum.sample_rate_hz, params.tau, strict=False)
    rows.append(("alias", "modulus", amap.modulus, ""))
    rows.append(("alias", "q_factor", amap.q_factor, ""))
    rows.append(("alias", "injective", amap.injective, ""))
    for lo, hi in folded_intervals(amap):
        rows.append(("alias", "folded_interval", f"{lo}-{hi}", "index"))

    array = build_array(params, Mode.MODE1, scenario.array.seed)
    plan = build_tx_plan(params, array, scenario.radar.guard)
    coherence = range_coherence_report(spectrum.kappa, params, plan)
    rows.append(("coherence", "range_native", coherence["native"], ""))
    for m, value in enumerate(coherence["per_channel"]):
        rows.append(("coherence", f"range_channel_{m}", value, ""))

    tables = prototype_resource_tables(
        params,
        spectrum.occupied_bandwidth,
        sample_rate=scenario.spectrum.sample_rate_hz,
        guard=scenario.radar.guard,
    )
    for row in tables:
        rows.append((f"resources/{row.comparison}", row.resource, row.reference, "reference"))
        rows.append((f"resources/{row.comparison}", row.resource, row.reduced, "sub_nyquist"))
        rows.append((f"resources/{row.comparison}", row.resource, row.reduction_pct, "reduction_pct"))
    return rows


def budget_report(scenario: ScenarioConfig, path: Path) -> Path:
    rows = budget_rows(scenario)
    logger.info(f"Budget report: {len(rows)} rows -> {path}")
    return write_rows(path, BUDGET_COLUMNS, rows)
