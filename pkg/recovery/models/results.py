"""
Detection tables: one row per recovered target
(s, r, u, alpha_re, alpha_im, range_m, sine_azimuth, velocity_mps, iteration).
"""
import csv
from pathlib import Path

import numpy as np

from models.data_models import GridIndex, RadarParams, RecoveryResult, TargetEstimate
from utils.errors import ArtifactIOError
from utils.units import delay_to_range, doppler_to_velocity, range_to_delay, velocity_to_doppler

RESULT_COLUMNS = (
    "s", "r", "u", "alpha_re", "alpha_im", "range_m", "sine_azimuth", "velocity_mps", "iteration",
)


def write_result(result: RecoveryResult, path: Path) -> Path:
    path = Path(path)
    f_c = result.params.f_c
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(RESULT_COLUMNS)
            for cell, alpha, est, iteration in zip(
                result.support, result.amplitudes, result.estimates, result.iterations
            ):
                writer.writerow([
                    cell.s, cell.r, cell.u,
                    f"{alpha.real:.17g}", f"{alpha.imag:.17g}",
                    f"{delay_to_range(est.tau):.17g}",
                    f"{est.vartheta:.17g}",
                    f"{doppler_to_velocity(est.f_D, f_c):.17g}",
                    iteration,
                ])
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write detections {path}: {exc}") from exc
    return path


def read_result(path: Path, params: RadarParams) -> RecoveryResult:
    """Parse a detection table. Residual history is not stored and comes back empty."""
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read detections {path}: {exc}") from exc

    support, amplitudes, estimates, iterations = [], [], [], []
    for line_no, row in enumerate(rows, start=2):
        try:
            support.append(GridIndex(s=int(row["s"]), r=int(row["r"]), u=int(row["u"])))
            amplitudes.append(complex(float(row["alpha_re"]), float(row["alpha_im"])))
            estimates.append(TargetEstimate(
                tau=range_to_delay(float(row["range_m"])),
                vartheta=float(row["sine_azimuth"]),
                f_D=velocity_to_doppler(float(row["velocity_mps"]), params.f_c),
            ))
            iterations.append(int(row["iteration"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactIOError(f"{path}:{line_no}: malformed detection row ({exc})") from exc

    return RecoveryResult(
        support=tuple(support),
        amplitudes=np.array(amplitudes, dtype=complex),
        estimates=tuple(estimates),
        residuals=(),
        iterations=tuple(iterations),
        params=params,
    )
