"""
Plain-text constellation files: one line per element
(type Tx|Rx, index, normalized position, meters, FDM slot) after a short header.
"""
from pathlib import Path
from typing import List, Tuple

from models.data_models import ArrayConfig, Mode, RadarParams
from utils.errors import ArtifactIOError
from utils.units import normalized_to_meters


def format_array(array: ArrayConfig, params: RadarParams) -> str:
    lines = [
        f"# mode {int(array.mode)}",
        f"# aperture {array.Z!r}",
        f"# seed {'-' if array.seed is None else array.seed}",
        "# type index position_wl position_m slot",
    ]
    for m, (pos, slot) in enumerate(zip(array.xi, array.tx_slots)):
        lines.append(f"Tx {m} {pos:.17g} {normalized_to_meters(pos, params.f_c):.17g} {slot}")
    for q, pos in enumerate(array.zeta):
        lines.append(f"Rx {q} {pos:.17g} {normalized_to_meters(pos, params.f_c):.17g} -")
    return "\n".join(lines) + "\n"


def write_array(array: ArrayConfig, params: RadarParams, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_array(array, params), encoding="utf-8")
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write array file {path}: {exc}") from exc
    return path


def read_array(path: Path) -> ArrayConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read array file {path}: {exc}") from exc

    header = {}
    tx: List[Tuple[int, float, int]] = []
    rx: List[Tuple[int, float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2:
                header[parts[0]] = parts[1]
            continue
        fields = line.split()
        try:
            if fields[0] == "Tx":
                tx.append((int(fields[1]), float(fields[2]), int(fields[4])))
            elif fields[0] == "Rx":
                rx.append((int(fields[1]), float(fields[2])))
            else:
                raise ValueError(f"unknown element type {fields[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ArtifactIOError(f"Malformed array line in {path}: {line!r} ({exc})") from exc

    try:
        mode = Mode.parse(header["mode"])
        aperture = float(header["aperture"])
    except KeyError as exc:
        raise ArtifactIOError(f"Array file {path} is missing header field {exc}") from exc
    seed = None if header.get("seed", "-") == "-" else int(header["seed"])

    tx.sort()
    rx.sort()
    return ArrayConfig(
        mode=mode,
        xi=tuple(pos for _, pos, _ in tx),
        zeta=tuple(pos for _, pos in rx),
        Z=aperture,
        tx_slots=tuple(slot for _, _, slot in tx),
        seed=seed,
    )
