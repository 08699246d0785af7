"""
Binary coefficient-tensor files.

Layout (little endian):
    b"CTEN", version u32, M u32, Q u32, P u32, K u32, item size u32 (8 or 16),
    gamma f64, kappa K x i64, payload M*Q*P*K complex (row-major m, q, p, k).
"""
import struct
from pathlib import Path

import numpy as np

from models.data_models import CoefficientTensor, RadarParams
from utils.errors import ArtifactIOError, ConfigurationError

MAGIC = b"CTEN"
VERSION = 1
_HEADER = struct.Struct("<4sIIIIIId")
_DTYPES = {8: np.dtype("<c8"), 16: np.dtype("<c16")}


def write_tensor(tensor: CoefficientTensor, path: Path, *, single_precision: bool = False) -> Path:
    path = Path(path)
    dtype = _DTYPES[8 if single_precision else 16]
    M, Q, P, K = tensor.shape
    header = _HEADER.pack(MAGIC, VERSION, M, Q, P, K, dtype.itemsize, float(tensor.gamma))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            f.write(header)
            f.write(np.asarray(tensor.kappa, dtype="<i8").tobytes())
            f.write(np.ascontiguousarray(tensor.data, dtype=dtype).tobytes())
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write tensor {path}: {exc}") from exc
    return path


def read_tensor(path: Path, params: RadarParams) -> CoefficientTensor:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ArtifactIOError(f"Cannot read tensor {path}: {exc}") from exc

    if len(raw) < _HEADER.size:
        raise ArtifactIOError(f"{path}: truncated header")
    magic, version, M, Q, P, K, itemsize, gamma = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ArtifactIOError(f"{path}: not a coefficient tensor (magic {magic!r})")
    if version != VERSION:
        raise ArtifactIOError(f"{path}: unsupported version {version}")
    if itemsize not in _DTYPES:
        raise ArtifactIOError(f"{path}: unsupported item size {itemsize}")
    if P != params.P:
        raise ArtifactIOError(f"{path}: tensor has {P} pulses, parameters expect {params.P}")

    offset = _HEADER.size
    expected = offset + 8 * K + itemsize * M * Q * P * K
    if len(raw) != expected:
        raise ArtifactIOError(f"{path}: size {len(raw)} bytes, expected {expected}")

    kappa = np.frombuffer(raw, dtype="<i8", count=K, offset=offset).astype(np.int64)
    offset += 8 * K
    data = np.frombuffer(raw, dtype=_DTYPES[itemsize], count=M * Q * P * K, offset=offset)
    data = data.astype(np.complex128).reshape(M, Q, P, K)
    return CoefficientTensor(data=data, kappa=kappa, params=params, gamma=gamma)


def export_tensor_text(tensor: CoefficientTensor, path: Path, *, max_entries: int = 100_000) -> Path:
    """One `m q p kappa re im` line per entry; meant for small tensors."""
    if tensor.data.size > max_entries:
        raise ConfigurationError(f"Tensor has {tensor.data.size} entries; text export is capped at {max_entries}")
    path = Path(path)
    lines = [f"# gamma {tensor.gamma:.17g}", "# m q p kappa re im"]
    M, Q, P, K = tensor.shape
    for m in range(M):
        for q in range(Q):
            for p in range(P):
                for k in range(K):
                    value = tensor.data[m, q, p, k]
                    lines.append(f"{m} {q} {p} {tensor.kappa[k]} {value.real:.17g} {value.imag:.17g}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ArtifactIOError(f"Cannot write tensor text {path}: {exc}") from exc
    return path
