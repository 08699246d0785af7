# utils/paths.py
from pathlib import Path
from dataclasses import dataclass
from typing import Optional

import config


@dataclass
class RunPaths:
    run_id: str
    run_dir: Path
    scene_path: Path
    tensor_path: Path
    result_path: Path
    ppi_path: Path
    rad_map_path: Path
    stats_path: Path
    histogram_path: Path
    budget_path: Path
    manifest_path: Path
    log_path: Path


def make_run_id(kind: str, seed: int, run_id: Optional[str] = None) -> str:
    """
    Run folder name. Derived from the seed (not the clock) so that repeating a
    run with the same seed writes to the same place and produces identical files.
    """
    if run_id:
        return run_id
    return f"{kind}_seed{seed}"


def create_run_paths(
    kind: str,
    seed: int,
    *,
    base_dir: Optional[Path] = None,
    run_id: Optional[str] = None,
) -> RunPaths:
    base = Path(base_dir) if base_dir is not None else config.OUTPUT_BASE

    run_id = make_run_id(kind, seed, run_id)
    run_dir = base / "runs" / run_id
    run_dir.mkdir(parents=True, exist_ok=True)

    return RunPaths(
        run_id=run_id,
        run_dir=run_dir,
        scene_path=run_dir / "scene.csv",
        tensor_path=run_dir / "coefficients.ctns",
        result_path=run_dir / "detections.csv",
        ppi_path=run_dir / "ppi.csv",
        rad_map_path=run_dir / "range_azimuth_doppler.csv",
        stats_path=run_dir / "experiment_summary.csv",
        histogram_path=run_dir / "detection_histogram.csv",
        budget_path=run_dir / "budget.csv",
        manifest_path=run_dir / "run_manifest.txt",
        log_path=run_dir / "run.log",
    )
