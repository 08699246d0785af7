"""
Exception types raised across the CogRadar stages.
Each error also derives from the closest builtin so plain `except ValueError` keeps working.
"""
from typing import List, Tuple


class CogRadarError(Exception):
    """Base class for every toolkit error."""


class ConfigurationError(CogRadarError, ValueError):
    """Inconsistent radar, array or scenario configuration."""


class SpectrumError(CogRadarError, ValueError):
    """Invalid cognitive band set or empty coefficient set."""


class AliasCollisionError(SpectrumError):
    """Two sampled coefficients fold onto the same index after subsampling."""

    def __init__(self, collisions: List[Tuple[int, int]], modulus: int):
        self.collisions = collisions
        self.modulus = modulus
        preview = ", ".join(f"{a}<->{b}" for a, b in collisions[:8])
        more = "" if len(collisions) <= 8 else f" (+{len(collisions) - 8} more)"
        super().__init__(
            f"{len(collisions)} coefficient pairs collide modulo {modulus}: {preview}{more}"
        )


class DegenerateDictionaryError(CogRadarError, ValueError):
    """Dictionary with a zero column or fewer than two columns."""


class GridRangeError(CogRadarError, IndexError):
    """Grid index outside the range/azimuth/Doppler bounds."""


class SceneGenerationError(CogRadarError, RuntimeError):
    """Random scene constraints could not be satisfied."""


class UndefinedSnrError(CogRadarError, ValueError):
    """Finite SNR requested for a tensor without signal power."""


class RecoveryInputError(CogRadarError, ValueError):
    """Malformed input to the sparse recovery."""


class IllConditionedSupportError(CogRadarError, RuntimeError):
    """Least-squares refit on the accumulated support is rank deficient."""


class ExperimentError(CogRadarError, RuntimeError):
    """Monte-Carlo experiment with too many failed trials."""


class ArtifactIOError(CogRadarError, OSError):
    """Artifact file could not be written or parsed."""


__all__ = [
    "CogRadarError",
    "ConfigurationError",
    "SpectrumError",
    "AliasCollisionError",
    "DegenerateDictionaryError",
    "GridRangeError",
    "SceneGenerationError",
    "UndefinedSnrError",
    "RecoveryInputError",
    "IllConditionedSupportError",
    "ExperimentError",
    "ArtifactIOError",
]
