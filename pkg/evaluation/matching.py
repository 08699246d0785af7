"""
Detection matching.

An estimate detects a truth target when it lies within one range cell, one
azimuth bin and one Doppler bin of it. Range and Doppler bins are compared
circularly (both grids wrap); azimuth is not. Assignment is one-to-one and
greedy: candidate pairs are taken in order of squared 3-D bin distance, then
truth index, then estimate index.
"""
from typing import List, Tuple

from models.data_models import DetectionReport, GridIndex, RadarParams, RecoveryResult, Target, TargetScene
from scene.grid import physical_to_grid


def _circular(a: int, b: int, modulus: int) -> int:
    d = abs(a - b) % modulus
    return min(d, modulus - d)


def bin_offsets(a: GridIndex, b: GridIndex, params: RadarParams) -> Tuple[int, int, int]:
    return (
        _circular(a.s, b.s, params.range_bins),
        abs(a.r - b.r),
        _circular(a.u, b.u, params.doppler_bins),
    )


def estimate_bins(result: RecoveryResult, params: RadarParams) -> List[GridIndex]:
    """Grid cell of each estimate (the support itself for unrefined results)."""
    if result.refine_factor == 0:
        return list(result.support)
    return [
        physical_to_grid(Target(alpha=complex(a), tau_l=e.tau, vartheta=e.vartheta, f_D=e.f_D), params)
        for a, e in zip(result.amplitudes, result.estimates)
    ]


def match_detections(truth: TargetScene, result: RecoveryResult, params: RadarParams) -> DetectionReport:
    truth_bins = [physical_to_grid(t, params) for t in truth.targets]
    est_bins = estimate_bins(result, params)

    candidates = []
    for i, tb in enumerate(truth_bins):
        for j, eb in enumerate(est_bins):
            offsets = bin_offsets(tb, eb, params)
            if max(offsets) <= 1:
                candidates.append((sum(d * d for d in offsets), i, j))
    candidates.sort()

    hits: List[Tuple[int, int]] = []
    used_truth, used_est = set(), set()
    for _, i, j in candidates:
        if i in used_truth or j in used_est:
            continue
        hits.append((i, j))
        used_truth.add(i)
        used_est.add(j)
    hits.sort()

    return DetectionReport(
        hits=hits,
        misses=[i for i in range(len(truth_bins)) if i not in used_truth],
        false_alarms=[j for j in range(len(est_bins)) if j not in used_est],
        strict_hits=[(i, j) for i, j in hits if truth_bins[i] == est_bins[j]],
        truth_bins=truth_bins,
        estimate_bins=est_bins,
    )
