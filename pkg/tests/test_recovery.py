import itertools

import numpy as np
import pytest

from array_geometry import build_array, compute_beta
from models.data_models import (
    CoefficientTensor,
    GridIndex,
    NoiseSpec,
    RadarParams,
    Target,
    TargetScene,
)
from recovery.models import read_result, write_result
from recovery.recovery_engine import (
    RecoveryController,
    StopCriterion,
    atom,
    azimuth_grid,
    build_dictionaries,
    correlation_map,
    doppler_focus,
    estimate_parameters,
    focus_frequencies,
    recover,
    refine,
)
from recovery.recovery_engine.somp import _bin_objective
from scene import grid_to_physical, random_scene, target_at
from synthesis import add_noise, synthesize
from utils.errors import ConfigurationError, RecoveryInputError
from utils.units import delay_to_range
from waveform import build_tx_plan


def _recover_scene(scene, setup, stop):
    params, array, plan, spectrum = setup
    tensor = synthesize(scene, array, plan, spectrum, params)
    dictionaries = build_dictionaries(params, array, plan, spectrum.kappa)
    return recover(doppler_focus(tensor), dictionaries, stop), tensor, dictionaries


# --- dictionaries ---

def test_dictionary_shapes_and_modulus(small_setup):
    params, array, plan, spectrum = small_setup
    d = build_dictionaries(params, array, plan, spectrum.kappa)

    assert d.M == 2
    assert d.range_base.shape == (16, 32)
    assert d.range_phase.shape == (2, 32)
    assert d.azimuth.shape == (2, 3, 6)
    assert [a.shape for a in d.A] == [(16, 32), (16, 32)]
    assert [b.shape for b in d.B] == [(3, 6), (3, 6)]
    for matrix in d.A + d.B:
        np.testing.assert_allclose(np.abs(matrix), 1.0)


def test_range_dictionary_collapses_to_dft():
    params = RadarParams(T=1, R=2, tau=1e-4, P=2, B_h=1.6e5, f_c=10e9)
    array = build_array(params, 1, seed=0)
    plan = build_tx_plan(params, array, guard=0.0)
    d = build_dictionaries(params, array, plan, np.arange(params.N))

    assert plan.f_m == (0.0,)
    np.testing.assert_allclose(d.range_matrix(0), np.fft.fft(np.eye(params.N)), atol=1e-9)


def test_dictionary_entries_follow_the_model(small_setup):
    params, array, plan, spectrum = small_setup
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    vartheta = azimuth_grid(params)

    m, q, r, k, s = 1, 2, 4, 9, 13
    beta = compute_beta(array.xi[m], array.zeta[q], plan.f_m[m], params)
    expected_az = np.exp(2j * np.pi * beta * vartheta[r])
    expected_rng = np.exp(-2j * np.pi * k * s / params.range_bins) \
        * np.exp(-2j * np.pi * (plan.f_m[m] / params.B_h) * (s / params.T))

    assert d.B[m][q, r] == pytest.approx(expected_az, abs=1e-12)
    assert d.A[m][k, s] == pytest.approx(expected_rng, abs=1e-12)
    assert atom(d, m, s, r)[q, k] == pytest.approx(expected_az * expected_rng, abs=1e-12)


# --- Doppler focusing ---

def _random_tensor(params, shape, rng):
    data = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return CoefficientTensor(data=data, kappa=np.arange(shape[3]), params=params)


def test_single_pulse_focus_is_identity(rng):
    params = RadarParams(T=2, R=3, tau=1e-4, P=1, B_h=1.6e5, f_c=10e9)
    tensor = _random_tensor(params, (2, 3, 1, 5), rng)
    np.testing.assert_allclose(doppler_focus(tensor).data, tensor.data)


def test_focus_gain_at_matching_bin(small_setup):
    params, array, plan, spectrum = small_setup
    u = 3
    f_D = focus_frequencies(params)[u]
    tensor = synthesize(TargetScene(targets=(Target(alpha=1.0, tau_l=0.0, vartheta=0.0, f_D=f_D),)),
                        array, plan, spectrum, params)
    focused = doppler_focus(tensor).data

    np.testing.assert_allclose(focused[:, :, u, :], params.P, atol=1e-9)
    others = [v for v in range(params.P) if v != u]
    np.testing.assert_allclose(focused[:, :, others, :], 0.0, atol=1e-9)


def test_focus_matches_direct_sum(rng):
    params = RadarParams(T=2, R=3, tau=1e-4, P=16, B_h=1.6e5, f_c=10e9)
    tensor = _random_tensor(params, (2, 3, 16, 4), rng)
    nu = focus_frequencies(params)
    pulses = np.arange(params.P)

    kernel = np.exp(-2j * np.pi * np.outer(nu, pulses) * params.tau)  # (u, p)
    direct = np.einsum("up,mqpk->mquk", kernel, tensor.data)
    np.testing.assert_allclose(doppler_focus(tensor).data, direct, atol=1e-9)


def test_focus_parseval(small_params, rng):
    tensor = _random_tensor(small_params, (2, 3, 4, 16), rng)
    focused = doppler_focus(tensor).data
    assert np.sum(np.abs(focused) ** 2) == pytest.approx(small_params.P * np.sum(np.abs(tensor.data) ** 2))


# --- SOMP ---

def test_single_target_exact(small_setup):
    params = small_setup[0]
    idx = GridIndex(s=11, r=4, u=1)
    truth = target_at(idx, params, alpha=0.7 - 0.2j)
    result, _, _ = _recover_scene(TargetScene(targets=(truth,), grid=(idx,)), small_setup, StopCriterion(targets=1))

    assert result.support == (idx,)
    assert abs(result.amplitudes[0] - (0.7 - 0.2j)) <= 1e-9
    assert result.iterations == (1,)
    assert result.residuals[-1] <= 1e-9 * result.residuals[0]


def test_correlation_map_matches_brute_force(small_setup):
    params, array, plan, spectrum = small_setup
    scene = random_scene(3, params, seed=13)
    tensor = add_noise(synthesize(scene, array, plan, spectrum, params), NoiseSpec(snr_db=5.0, seed=2))
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    focused = doppler_focus(tensor).data

    fast = correlation_map(focused, d)
    brute = np.zeros_like(fast)
    for u, r, s in itertools.product(range(params.P), range(params.azimuth_bins), range(params.range_bins)):
        brute[u, r, s] = sum(
            abs(np.vdot(atom(d, m, s, r), focused[m, :, u, :])) ** 2 for m in range(d.M)
        )
    np.testing.assert_allclose(fast, brute, rtol=1e-9, atol=1e-9)

    first = recover(doppler_focus(tensor), d, StopCriterion(targets=1), swap_sweeps=0).support[0]
    u, r, s = np.unravel_index(int(np.argmax(brute)), brute.shape)
    assert first == GridIndex(s=int(s), r=int(r), u=int(u))


def test_stacked_score_matches_brute_force(small_setup):
    params, array, plan, spectrum = small_setup
    tensor = add_noise(synthesize(random_scene(2, params, seed=21), array, plan, spectrum, params),
                       NoiseSpec(snr_db=5.0, seed=4))
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    focused = doppler_focus(tensor).data
    u = 2

    fast = _bin_objective(focused[:, :, u, :], d, coherent=True)
    brute = np.zeros_like(fast)
    for r, s in itertools.product(range(params.azimuth_bins), range(params.range_bins)):
        brute[r, s] = abs(sum(np.vdot(atom(d, m, s, r), focused[m, :, u, :]) for m in range(d.M))) ** 2
    np.testing.assert_allclose(fast, brute, rtol=1e-9, atol=1e-9)


def test_every_cell_is_recovered_alone(small_setup):
    params, array, plan, spectrum = small_setup
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    stop = StopCriterion(targets=1)

    for s, r, u in itertools.product(range(params.range_bins), range(params.azimuth_bins), range(params.P)):
        idx = GridIndex(s=s, r=r, u=u)
        tensor = synthesize(TargetScene(targets=(target_at(idx, params),)), array, plan, spectrum, params)
        result = recover(doppler_focus(tensor), d, stop)
        assert result.support == (idx,), f"cell {idx} recovered as {result.support}"


def test_residuals_never_increase(small_setup):
    params, array, plan, spectrum = small_setup
    tensor = synthesize(random_scene(3, params, seed=3), array, plan, spectrum, params)
    tensor = add_noise(tensor, NoiseSpec(snr_db=0.0, seed=9))
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    result = recover(doppler_focus(tensor), d, StopCriterion(targets=6))

    assert len(result.residuals) == result.L + 1
    assert all(b <= a + 1e-9 for a, b in zip(result.residuals, result.residuals[1:]))
    assert result.iterations == tuple(range(1, result.L + 1))


def test_scaling_changes_only_amplitudes(small_setup):
    params, array, plan, spectrum = small_setup
    tensor = add_noise(synthesize(random_scene(3, params, seed=17), array, plan, spectrum, params),
                       NoiseSpec(snr_db=10.0, seed=1))
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    stop = StopCriterion(targets=3)

    base = recover(doppler_focus(tensor), d, stop)
    scaled = recover(doppler_focus(tensor.with_data(tensor.data * (3.0 - 4.0j))), d, stop)

    assert scaled.support == base.support
    np.testing.assert_allclose(scaled.amplitudes, base.amplitudes * (3.0 - 4.0j), rtol=1e-9)


def test_exact_support_on_random_arrays_and_subbands(subband_setup):
    params, array, plan, spectrum = subband_setup
    assert array.M * array.Q >= 8 and spectrum.K >= 8 and params.P >= 8
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    seeds = np.random.SeedSequence(20240607).generate_state(200)

    failed = []
    for trial, seed in enumerate(seeds):
        L = 1 + trial % 4
        scene = random_scene(L, params, seed=int(seed))
        tensor = synthesize(scene, array, plan, spectrum, params)
        result = recover(doppler_focus(tensor), d, StopCriterion(targets=L))
        if set(result.support) != set(scene.grid):
            failed.append(trial)
    assert failed == []


def test_support_correction_only_lowers_the_residual(subband_setup):
    params, array, plan, spectrum = subband_setup
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    for seed in range(5):
        scene = random_scene(4, params, seed=100 + seed)
        tensor = add_noise(synthesize(scene, array, plan, spectrum, params), NoiseSpec(snr_db=0.0, seed=seed))
        focused = doppler_focus(tensor)

        greedy = recover(focused, d, StopCriterion(targets=4), swap_sweeps=0)
        corrected = recover(focused, d, StopCriterion(targets=4))

        assert corrected.residuals[:-1] == greedy.residuals[:-1]
        assert corrected.residuals[-1] <= greedy.residuals[-1] + 1e-12
        assert len(set(corrected.support)) == 4
        assert corrected.iterations == greedy.iterations


def test_zero_targets_requested(small_setup):
    params = small_setup[0]
    result, _, _ = _recover_scene(random_scene(2, params, seed=1), small_setup, StopCriterion(targets=0))
    assert result.L == 0
    assert len(result.residuals) == 1


def test_residual_ratio_stop(small_setup):
    params = small_setup[0]
    idx = GridIndex(s=3, r=1, u=2)
    scene = TargetScene(targets=(target_at(idx, params),), grid=(idx,))
    result, _, _ = _recover_scene(scene, small_setup, StopCriterion(residual_ratio=1e-6))

    assert result.support == (idx,)


@pytest.mark.parametrize(
    "kwargs",
    [
        {},
        {"targets": 2, "residual_ratio": 0.1},
        {"targets": -1},
        {"residual_ratio": 1.5},
        {"targets": 2, "max_iterations": 0},
    ],
)
def test_invalid_stop_criteria(kwargs):
    with pytest.raises(RecoveryInputError):
        StopCriterion(**kwargs)


def test_shape_mismatch_is_rejected(small_setup, rng):
    params, array, plan, spectrum = small_setup
    d = build_dictionaries(params, array, plan, spectrum.kappa)
    wrong = _random_tensor(params.replace(P=5), (2, 3, 5, 16), rng)
    with pytest.raises(RecoveryInputError):
        recover(doppler_focus(wrong), d, StopCriterion(targets=1))


# --- estimates and refinement ---

def test_estimates_from_support(prototype_params):
    p = prototype_params
    centre = estimate_parameters([GridIndex(s=0, r=p.azimuth_bins // 2, u=p.P // 2)], p)[0]
    assert (centre.tau, centre.vartheta, centre.f_D) == pytest.approx((0.0, 0.0, 0.0))

    next_bin = estimate_parameters([GridIndex(s=1, r=p.azimuth_bins // 2, u=p.P // 2)], p)[0]
    assert delay_to_range(next_bin.tau) == pytest.approx(1.25)


def test_refinement_keeps_on_grid_estimates(small_setup):
    params = small_setup[0]
    idx = GridIndex(s=9, r=2, u=3)
    scene = TargetScene(targets=(target_at(idx, params),), grid=(idx,))
    coarse, tensor, d = _recover_scene(scene, small_setup, StopCriterion(targets=1))
    fine = refine(coarse, tensor, d, factor=1)

    assert fine.support == coarse.support
    assert fine.refine_factor == 1
    est = fine.estimates[0]
    assert (est.tau, est.vartheta, est.f_D) == pytest.approx(grid_to_physical(idx, params))
    assert fine.amplitudes[0] == pytest.approx(1.0, abs=1e-9)


def test_refinement_recovers_half_bin_delay(small_setup):
    params = small_setup[0]
    tau_l, vartheta, f_D = grid_to_physical(GridIndex(s=6, r=2, u=1), params)
    tau_l += 0.5 * params.delay_cell
    scene = TargetScene(targets=(Target(alpha=1.0, tau_l=tau_l, vartheta=vartheta, f_D=f_D),))
    coarse, tensor, d = _recover_scene(scene, small_setup, StopCriterion(targets=1))
    fine = refine(coarse, tensor, d, factor=8)

    assert coarse.support[0].s in (6, 7)
    assert abs(fine.estimates[0].tau - tau_l) <= params.delay_cell / 8
    assert abs(fine.estimates[0].tau - tau_l) < abs(coarse.estimates[0].tau - tau_l)


def test_refinement_factor_must_be_positive(small_setup):
    params = small_setup[0]
    coarse, tensor, d = _recover_scene(random_scene(1, params, seed=2), small_setup, StopCriterion(targets=1))
    with pytest.raises(ConfigurationError):
        refine(coarse, tensor, d, factor=0)


# --- controller ---

def test_controller_runs_the_stages(small_setup):
    params, array, plan, spectrum = small_setup
    cells = (GridIndex(s=4, r=1, u=0), GridIndex(s=20, r=4, u=2))
    scene = TargetScene(targets=tuple(target_at(c, params, alpha=0.8j) for c in cells), grid=cells)
    tensor = synthesize(scene, array, plan, spectrum, params)
    controller = RecoveryController(params, array, plan, spectrum.kappa, StopCriterion(targets=2), refine_factor=2)

    result = controller.run(tensor)
    assert set(result.support) == set(scene.grid)
    assert result.refine_factor == 2
    assert controller.run(tensor, stop=StopCriterion(targets=1)).L == 1


def test_controller_rejects_other_coefficient_sets(small_setup):
    params, array, plan, spectrum = small_setup
    controller = RecoveryController(params, array, plan, spectrum.kappa[:8], StopCriterion(targets=1))
    tensor = synthesize(random_scene(1, params, seed=0), array, plan, spectrum, params)
    with pytest.raises(RecoveryInputError):
        controller.run(tensor)
    with pytest.raises(RecoveryInputError):
        RecoveryController(params, array, plan, spectrum.kappa, StopCriterion(targets=1), refine_factor=-1)
    with pytest.raises(RecoveryInputError):
        RecoveryController(params, array, plan, spectrum.kappa, StopCriterion(targets=1), swap_sweeps=-1)


def test_result_file_round_trip(tmp_path, small_setup):
    params = small_setup[0]
    result, _, _ = _recover_scene(random_scene(3, params, seed=8), small_setup, StopCriterion(targets=3))
    loaded = read_result(write_result(result, tmp_path / "detections.csv"), params)

    assert loaded.support == result.support
    assert loaded.iterations == result.iterations
    assert loaded.residuals == ()
    np.testing.assert_allclose(loaded.amplitudes, result.amplitudes, rtol=1e-12)
    for a, b in zip(loaded.estimates, result.estimates):
        assert a.vartheta == b.vartheta
        assert a.tau == pytest.approx(b.tau, rel=1e-9, abs=1e-18)
        assert a.f_D == pytest.approx(b.f_D, rel=1e-9, abs=1e-6)
