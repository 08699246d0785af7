"""
Plot-ready map tables.

PPI:   label, index, range_m, sine_azimuth, east_m, north_m
RAD:   label, index, x_m, y_m, velocity_mps

The radar sits at the origin looking north; sine-azimuth is measured from
boresight, so east = R sin(theta) and north = R cos(theta).
"""
import csv
import math
from pathlib import Path
from typing import Dict, Iterator, List, Tuple

from models.data_models import RecoveryResult, TargetScene
from utils.errors import ArtifactIOError
from utils.units import delay_to_range, doppler_to_velocity

PPI_COLUMNS = ("label", "index", "range_m", "sine_azimuth", "east_m", "north_m")
RAD_COLUMNS = ("label", "index", "x_m", "y_m", "velocity_mps")


def _points(result: RecoveryResult, truth: TargetScene) -> Iterator[Tuple[str, int, float, float, float]]:
    for idx, t in enumerate(truth.targets):
        yield "truth", idx, t.tau_l, t.vartheta, t.f_D
    for idx, e in enumerate(result.estimates):
        yield "estimate", idx, e.tau, e.vartheta, e.f_D


def _plane(range_m: float, vartheta: float) -> Tuple[float, float]:
    vartheta = max(-1.0, min(1.0, vartheta))
    return range_m * vartheta, range_m * math.sqrt(1.0 - vartheta * vartheta)


def _write_rows(path: Path, columns, rows) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write map {path}: {exc}") from exc


def emit_maps(result: RecoveryResult, truth: TargetScene, ppi_path: Path, rad_path: Path) -> Tuple[Path, Path]:
    f_c = result.params.f_c
    ppi_rows, rad_rows = [], []
    for label, idx, tau_l, vartheta, f_D in _points(result, truth):
        range_m = delay_to_range(tau_l)
        east, north = _plane(range_m, vartheta)
        ppi_rows.append([label, idx, f"{range_m:.17g}", f"{vartheta:.17g}", f"{east:.17g}", f"{north:.17g}"])
        rad_rows.append([label, idx, f"{east:.17g}", f"{north:.17g}", f"{doppler_to_velocity(f_D, f_c):.17g}"])

    ppi_path, rad_path = Path(ppi_path), Path(rad_path)
    _write_rows(ppi_path, PPI_COLUMNS, ppi_rows)
    _write_rows(rad_path, RAD_COLUMNS, rad_rows)
    return ppi_path, rad_path


def read_map(path: Path) -> List[Dict[str, object]]:
    """Rows of a map table with numeric columns parsed."""
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read map {path}: {exc}") from exc
    parsed = []
    for row in rows:
        parsed.append({
            key: (value if key == "label" else int(value) if key == "index" else float(value))
            for key, value in row.items()
        })
    return parsed
