"""Matching, Monte-Carlo experiments, map emission, scenarios and reports."""

from .matching import bin_offsets, estimate_bins, match_detections
from .maps import PPI_COLUMNS, RAD_COLUMNS, emit_maps, read_map
from .scenario import ConfigurationSpec, ScenarioConfig, load_scenario, parse_scenario, write_manifest
from .experiment import (
    ConfigurationContext,
    build_configuration,
    draw_scene,
    run_configuration,
    run_experiment,
    trial_seeds,
)
from .reports import budget_report, budget_rows, format_comparison, write_stats

__all__ = [
    "bin_offsets",
    "estimate_bins",
    "match_detections",
    "PPI_COLUMNS",
    "RAD_COLUMNS",
    "emit_maps",
    "read_map",
    "ConfigurationSpec",
    "ScenarioConfig",
    "load_scenario",
    "parse_scenario",
    "write_manifest",
    "ConfigurationContext",
    "build_configuration",
    "draw_scene",
    "run_configuration",
    "run_experiment",
    "trial_seeds",
    "budget_report",
    "budget_rows",
    "format_comparison",
    "write_stats",
]
