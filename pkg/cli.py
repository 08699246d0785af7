"""
CogRadar command line.

    python cli.py simulate --mode 3 --cognitive --snr-db -5 --seed 7
    python cli.py recover  --mode 3 --cognitive --tensor coefficients.ctns --scene scene.csv
    python cli.py run      --mode 4 --config configs/desk_scale.yaml
    python cli.py trials   --trials 100 --snr-db -15
    python cli.py compare-modes --config configs/desk_scale.yaml
    python cli.py budget
"""
import functools
import sys
from pathlib import Path
from typing import Optional

import click

sys.path.insert(0, str(Path(__file__).parent))

from evaluation.reports import budget_report, format_comparison
from evaluation.scenario import ConfigurationSpec, ScenarioConfig, load_scenario
from run_all_experiments import run_trials
from run_complete_pipeline import recover_tensor, run_pipeline, simulate_scene
from utils.errors import CogRadarError
from utils.paths import create_run_paths


def _handle_errors(func):
    """Turn toolkit errors into a one-line message and a nonzero exit code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CogRadarError as exc:
            raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc
    return wrapper


def _scenario_options(func):
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Scenario YAML (defaults to the prototype parameters)."),
        click.option("--snr-db", type=float, default=None, help="Per-coefficient SNR in dB (default: noiseless)."),
        click.option("--targets", type=int, default=None, help="Targets per scene."),
        click.option("--seed", type=int, default=None, help="Master seed."),
        click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="Output base directory."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _mode_options(func):
    func = click.option("--cognitive/--non-cognitive", default=False, show_default=True,
                        help="Concentrate transmit power in the sampled subbands.")(func)
    func = click.option("--mode", type=click.IntRange(1, 4), default=1, show_default=True,
                        help="Array mode.")(func)
    return func


def _build_scenario(config_path, snr_db, targets, seed, out_dir, trials=None) -> ScenarioConfig:
    scenario = load_scenario(config_path)
    return scenario.with_overrides(
        noise={"snr_db": snr_db},
        scene={"targets": targets},
        experiment={"master_seed": seed, "trials": trials},
        output={"base_dir": out_dir},
    )


@click.group()
def cli():
    """Cognitive sub-Nyquist MIMO radar simulation and recovery."""


@cli.command()
@_mode_options
@_scenario_options
@_handle_errors
def simulate(mode, cognitive, config_path, snr_db, targets, seed, out_dir):
    """Draw a scene and write its coefficient tensor."""
    scenario = _build_scenario(config_path, snr_db, targets, seed, out_dir)
    out = simulate_scene(scenario, mode, cognitive, scenario.experiment.master_seed)
    click.echo(f"Scene with {out['scene'].L} targets and tensor {out['tensor'].shape} -> {out['output_dir']}")


@cli.command()
@_mode_options
@_scenario_options
@click.option("--tensor", "tensor_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--scene", "scene_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Ground truth; enables matching and maps.")
@_handle_errors
def recover(mode, cognitive, config_path, snr_db, targets, seed, out_dir, tensor_path, scene_path):
    """Recover targets from a tensor file."""
    scenario = _build_scenario(config_path, snr_db, targets, seed, out_dir)
    out = recover_tensor(scenario, mode, cognitive, Path(tensor_path),
                         scene_path=Path(scene_path) if scene_path else None,
                         seed=scenario.experiment.master_seed)
    line = f"{out['result'].L} detections -> {out['output_dir']}"
    if "report" in out:
        line += f" ({out['report'].outcome} detected)"
    click.echo(line)


@cli.command()
@_mode_options
@_scenario_options
@_handle_errors
def run(mode, cognitive, config_path, snr_db, targets, seed, out_dir):
    """End-to-end single scene."""
    scenario = _build_scenario(config_path, snr_db, targets, seed, out_dir)
    out = run_pipeline(scenario, mode, cognitive)
    report = out["report"]
    click.echo(f"{report.outcome} detected ({len(report.strict_hits)} strict), "
               f"{len(report.false_alarms)} false alarms -> {out['output_dir']}")


@cli.command()
@_mode_options
@_scenario_options
@click.option("--trials", type=int, default=None, help="Number of Monte-Carlo trials.")
@_handle_errors
def trials(mode, cognitive, config_path, snr_db, targets, seed, out_dir, trials):
    """Monte-Carlo trials of one configuration."""
    scenario = _build_scenario(config_path, snr_db, targets, seed, out_dir, trials)
    scenario = scenario.with_overrides(experiment={
        "configurations": [ConfigurationSpec(mode=mode, cognitive=cognitive).model_dump()],
    })
    out = run_trials(scenario, kind=f"trials_mode{mode}_{'cog' if cognitive else 'noncog'}")
    click.echo(format_comparison(out["stats"]))
    click.echo(f"-> {out['output_dir']}")


@cli.command("compare-modes")
@_scenario_options
@click.option("--trials", type=int, default=None, help="Number of Monte-Carlo trials.")
@_handle_errors
def compare_modes(config_path, snr_db, targets, seed, out_dir, trials):
    """Paired Monte-Carlo comparison of every configured mode."""
    scenario = _build_scenario(config_path, snr_db, targets, seed, out_dir, trials)
    out = run_trials(scenario, kind="compare_modes")
    click.echo(format_comparison(out["stats"]))
    click.echo(f"-> {out['output_dir']}")


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
@_handle_errors
def budget(config_path: Optional[str], out_dir: Optional[str]):
    """SNR loss, dynamic range, aliasing, coherence and resource-reduction report."""
    scenario = load_scenario(config_path).with_overrides(output={"base_dir": out_dir})
    paths = create_run_paths("budget", 0, base_dir=Path(scenario.output.base_dir), run_id=scenario.output.run_id)
    path = budget_report(scenario, paths.budget_path)
    click.echo(path.read_text(encoding="utf-8"))


if __name__ == "__main__":
    cli()
