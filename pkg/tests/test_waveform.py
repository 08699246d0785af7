import math

import numpy as np
import pytest

import config
from array_geometry import build_array
from utils.errors import AliasCollisionError, ConfigurationError, DegenerateDictionaryError, SpectrumError
from waveform import (
    alias_map,
    build_cognitive_spectrum,
    build_tx_plan,
    coefficient_set,
    folded_intervals,
    fourier_coherence,
    full_band_spectrum,
    mutual_coherence,
    prototype_spectrum,
    range_coherence_report,
)

PROTOTYPE_FOLDS = [
    (163, 200), (216, 253), (305, 342), (388, 425),
    (566, 603), (651, 688), (114, 151), (482, 519),
]


# --- cognitive spectrum ---

def test_prototype_gamma_conserves_power(prototype_params):
    spectrum = prototype_spectrum(prototype_params)

    assert spectrum.gamma == pytest.approx(math.sqrt(5.0), rel=1e-12)
    assert spectrum.gamma ** 2 * spectrum.occupied_bandwidth == pytest.approx(15e6, rel=1e-12)
    assert spectrum.is_cognitive


def test_prototype_kappa(prototype_params):
    spectrum = prototype_spectrum(prototype_params)

    assert spectrum.K == 304
    assert spectrum.K == sum(round((stop - start) * prototype_params.tau) for start, stop in spectrum.bands)
    assert list(spectrum.kappa[:38]) == list(range(163, 201))
    assert np.all(np.diff(spectrum.kappa) > 0)


def test_single_band_coefficients():
    spectrum = build_cognitive_spectrum(15e6, [(1.63e6, 2.005e6)], 1e-4)
    np.testing.assert_array_equal(spectrum.kappa, np.arange(163, 201))


def test_full_band(prototype_params):
    spectrum = full_band_spectrum(prototype_params)

    assert spectrum.gamma == 1.0
    assert not spectrum.is_cognitive
    np.testing.assert_array_equal(coefficient_set(spectrum, prototype_params.tau), np.arange(1500))


def test_band_edges_are_half_open():
    # 1 kHz bins at tau = 1 ms: [10 kHz, 12 kHz) holds k = 10, 11 only
    spectrum = build_cognitive_spectrum(1e5, [(1e4, 1.2e4)], 1e-3)
    np.testing.assert_array_equal(spectrum.kappa, [10, 11])


@pytest.mark.parametrize(
    "bands",
    [
        [(1e6, 2e6), (1.5e6, 2.5e6)],  # overlap
        [(14e6, 16e6)],                # beyond B_h
        [(2e6, 2e6)],                  # empty
        [],                            # nothing
        [(1e6, 2e6, 3e6)],             # not a pair
    ],
)
def test_invalid_bands(bands):
    with pytest.raises(SpectrumError):
        build_cognitive_spectrum(15e6, bands, 1e-4)


def test_band_between_coefficients_is_rejected():
    # 10 kHz bins; [1 kHz, 5 kHz) contains no multiple of 1/tau
    with pytest.raises(SpectrumError):
        build_cognitive_spectrum(1e5, [(1e3, 5e3)], 1e-4)


def test_gamma_relation_on_random_band_sets(rng):
    for _ in range(20):
        edges = np.sort(rng.choice(np.arange(1, 150), size=6, replace=False)) * 1e5
        bands = list(zip(edges[::2], edges[1::2]))
        spectrum = build_cognitive_spectrum(15e6, bands, 1e-4)
        assert spectrum.gamma ** 2 * spectrum.occupied_bandwidth == pytest.approx(15e6, rel=1e-12)


# --- FDM plan ---

def test_tx_plan_uses_slots(prototype_params):
    array = build_array(prototype_params, 3, seed=3)
    plan = build_tx_plan(prototype_params, array)

    assert plan.M == 4
    assert plan.f_m == tuple(s * 15e6 for s in array.tx_slots)
    assert all(b - a >= prototype_params.B_h for a, b in zip(plan.f_m, plan.f_m[1:]))


def test_tx_plan_rejects_wide_guard(prototype_params):
    array = build_array(prototype_params, 1, seed=0)
    with pytest.raises(ConfigurationError):
        build_tx_plan(prototype_params, array, guard=15e6)


# --- foldable subsampling ---

def test_prototype_bands_fold_injectively(prototype_params):
    kappa = prototype_spectrum(prototype_params).kappa
    amap = alias_map(kappa, prototype_params.N, config.ADC_SAMPLE_RATE_HZ, prototype_params.tau)

    assert amap.modulus == 750
    assert amap.injective
    assert amap.q_factor == pytest.approx(4.0)
    assert folded_intervals(amap) == PROTOTYPE_FOLDS


def test_reported_q_factor_is_passed_through(prototype_params):
    kappa = prototype_spectrum(prototype_params).kappa
    amap = alias_map(kappa, prototype_params.N, 7.5e6, 1e-4, q_factor=2.5)
    assert amap.q_factor == 2.5


def test_colliding_bands():
    spectrum = build_cognitive_spectrum(15e6, [(1.63e6, 2.005e6), (9.13e6, 9.505e6)], 1e-4)

    with pytest.raises(AliasCollisionError) as excinfo:
        alias_map(spectrum.kappa, 1500, 7.5e6, 1e-4)
    assert excinfo.value.modulus == 750
    assert (163, 913) in excinfo.value.collisions
    assert len(excinfo.value.collisions) == 38

    relaxed = alias_map(spectrum.kappa, 1500, 7.5e6, 1e-4, strict=False)
    assert not relaxed.injective


def test_no_subsampling_is_identity():
    kappa = np.arange(0, 64, 3)
    amap = alias_map(kappa, 64, 6.4e5, 1e-4)
    np.testing.assert_array_equal(amap.folded, kappa)
    assert amap.injective


def test_alias_map_needs_one_sample_per_period():
    with pytest.raises(ConfigurationError):
        alias_map(np.arange(4), 16, 5e3, 1e-4)


def test_injectivity_matches_interval_disjointness(rng):
    for _ in range(50):
        starts = np.sort(rng.choice(np.arange(0, 60), size=3, replace=False))
        bands = [(s * 1e4, (s + 3) * 1e4) for s in starts]
        if any(b[0] < a[1] for a, b in zip(bands, bands[1:])):
            continue
        spectrum = build_cognitive_spectrum(6.4e5, bands, 1e-4)
        amap = alias_map(spectrum.kappa, 64, 1.6e5, 1e-4, strict=False)

        folded_sets = [set(np.mod(np.arange(s, s + 3), 16)) for s in starts]
        disjoint = all(
            not (folded_sets[i] & folded_sets[j])
            for i in range(3) for j in range(i + 1, 3)
        )
        assert amap.injective == disjoint


# --- coherence ---

def test_identity_coherence_is_zero():
    assert mutual_coherence(np.eye(5)) == 0.0


def test_repeated_column_coherence_is_one(rng):
    matrix = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
    matrix[:, 3] = matrix[:, 1]
    assert mutual_coherence(matrix) == pytest.approx(1.0)


def test_coherence_ignores_column_scaling(rng):
    matrix = rng.standard_normal((8, 5)) + 1j * rng.standard_normal((8, 5))
    scales = np.array([2.0, -1j, 0.5 + 0.5j, 3.0, -7.0])
    assert mutual_coherence(matrix * scales) == pytest.approx(mutual_coherence(matrix), rel=1e-12)


def test_degenerate_dictionaries():
    with pytest.raises(DegenerateDictionaryError):
        mutual_coherence(np.ones((4, 1)))
    with pytest.raises(DegenerateDictionaryError):
        mutual_coherence(np.array([[1.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(DegenerateDictionaryError):
        fourier_coherence(np.array([], dtype=int), 16)


def test_fourier_coherence_matches_explicit_gram():
    kappa = np.array([1, 2, 3, 9, 10, 30])
    n = np.arange(40)
    dictionary = np.exp(-2j * np.pi * np.outer(kappa, n) / 40)
    assert fourier_coherence(kappa, 40) == pytest.approx(mutual_coherence(dictionary), rel=1e-9)


def test_prototype_range_coherence(prototype_params):
    kappa = prototype_spectrum(prototype_params).kappa
    n = np.arange(prototype_params.N)
    native = np.exp(-2j * np.pi * np.outer(kappa, n) / prototype_params.N)

    value = mutual_coherence(native)
    assert value == pytest.approx(0.42, abs=0.05)
    assert fourier_coherence(kappa, prototype_params.N) == pytest.approx(value, rel=1e-9)


def test_range_coherence_report(prototype_params):
    kappa = prototype_spectrum(prototype_params).kappa
    array = build_array(prototype_params, 1, seed=0)
    report = range_coherence_report(kappa, prototype_params, build_tx_plan(prototype_params, array))

    assert report["native"] == pytest.approx(0.42, abs=0.05)
    assert len(report["per_channel"]) == 8
    assert all(0.0 <= v <= 1.0 for v in report["per_channel"])
