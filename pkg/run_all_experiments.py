"""
Run the Monte-Carlo detection study over every configuration of a scenario.

Usage:
    python run_all_experiments.py [scenario.yaml]
"""
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from evaluation.experiment import run_experiment, trial_seeds
from evaluation.reports import budget_report, format_comparison, write_stats
from evaluation.scenario import ScenarioConfig, load_scenario, write_manifest
from utils.logging_utils import attach_run_log, detach_run_log, log_step, setup_logger
from utils.paths import create_run_paths

logger = setup_logger(__name__)


def run_trials(
    scenario: ScenarioConfig,
    *,
    kind: str = "trials",
    run_id: Optional[str] = None,
    progress: bool = True,
) -> Dict[str, Any]:
    """Run the experiment and write summary, histogram, budget and manifest files."""
    seed = scenario.experiment.master_seed
    paths = create_run_paths(
        kind,
        seed,
        base_dir=Path(scenario.output.base_dir),
        run_id=run_id or scenario.output.run_id,
    )
    handler = attach_run_log(paths.log_path)
    try:
        log_step(logger, f"MONTE-CARLO: {scenario.experiment.trials} trials")
        stats = run_experiment(scenario, progress=progress)

        log_step(logger, "REPORTS")
        write_stats(stats, paths.stats_path, paths.histogram_path)
        budget_report(scenario, paths.budget_path)
        seeds = dict(stats.seeds)
        seeds["trials"] = trial_seeds(seed, scenario.experiment.trials)
        write_manifest(scenario, seeds, paths.manifest_path)
        logger.info(f"[SAVED] statistics -> {paths.stats_path}")
    finally:
        detach_run_log(handler)

    return {"run_id": paths.run_id, "output_dir": str(paths.run_dir), "stats": stats}


def main() -> None:
    scenario_path = sys.argv[1] if len(sys.argv) > 1 else None
    outcome = run_trials(load_scenario(scenario_path), kind="compare_modes")

    print("\n" + "=" * 80)
    print("EXPERIMENT SUMMARY")
    print("=" * 80)
    print(format_comparison(outcome["stats"]))
    print(f"Output directory: {outcome['output_dir']}")


if __name__ == "__main__":
    main()
