"""
Scene CSV files: alpha_re, alpha_im, range_m, sine_azimuth, velocity_mps.
Physical units only; the grid is re-derived by callers when needed.
"""
import csv
from pathlib import Path
from typing import Optional

from models.data_models import RadarParams, Target, TargetScene
from scene.grid import physical_to_grid
from utils.errors import ArtifactIOError
from utils.units import delay_to_range, doppler_to_velocity, range_to_delay, velocity_to_doppler

SCENE_COLUMNS = ("alpha_re", "alpha_im", "range_m", "sine_azimuth", "velocity_mps")

DATA_DIR = Path(__file__).resolve().parent / "data"
CLOSELY_SPACED_PATH = DATA_DIR / "closely_spaced.csv"


def write_scene(scene: TargetScene, params: RadarParams, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(SCENE_COLUMNS)
            for t in scene.targets:
                writer.writerow([
                    f"{t.alpha.real:.17g}",
                    f"{t.alpha.imag:.17g}",
                    f"{delay_to_range(t.tau_l):.17g}",
                    f"{t.vartheta:.17g}",
                    f"{doppler_to_velocity(t.f_D, params.f_c):.17g}",
                ])
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write scene {path}: {exc}") from exc
    return path


def read_scene(path: Path, params: RadarParams, *, on_grid: Optional[bool] = None) -> TargetScene:
    """
    Parse a scene file. With on_grid=True the grid indices are attached; with
    None they are attached only when every target sits exactly on a bin.
    """
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read scene {path}: {exc}") from exc

    targets = []
    for line_no, row in enumerate(rows, start=2):
        try:
            targets.append(Target(
                alpha=complex(float(row["alpha_re"]), float(row["alpha_im"])),
                tau_l=range_to_delay(float(row["range_m"])),
                vartheta=float(row["sine_azimuth"]),
                f_D=velocity_to_doppler(float(row["velocity_mps"]), params.f_c),
            ))
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactIOError(f"{path}:{line_no}: malformed scene row ({exc})") from exc

    scene = TargetScene(targets=tuple(targets), grid=None)
    if on_grid is False:
        return scene

    grid = tuple(physical_to_grid(t, params) for t in targets)
    if on_grid is None and not _all_on_grid(scene, grid, params):
        return scene
    return TargetScene(targets=scene.targets, grid=grid)


def _off_bin(value: float, index: int, modulus: int) -> float:
    d = (value - index) % modulus
    return min(d, modulus - d)


def _all_on_grid(scene: TargetScene, grid, params: RadarParams) -> bool:
    tol = 1e-6
    for t, idx in zip(scene.targets, grid):
        if _off_bin(t.tau_l * params.range_bins / params.tau, idx.s, params.range_bins) > tol:
            return False
        if abs((t.vartheta + 1.0) * params.azimuth_bins / 2.0 - idx.r) > tol:
            return False
        if _off_bin((t.f_D * params.tau + 0.5) * params.P, idx.u, params.P) > tol:
            return False
    return True


def load_closely_spaced(params: RadarParams) -> TargetScene:
    """The shipped prototype-scale closely spaced scene."""
    return read_scene(CLOSELY_SPACED_PATH, params, on_grid=False)
