import itertools

import numpy as np
import pytest

from models.data_models import GridIndex, Target
from scene import (
    Separation,
    check_index,
    closely_spaced_scene,
    grid_to_physical,
    load_closely_spaced,
    physical_to_grid,
    random_scene,
    read_scene,
    target_at,
    write_scene,
)
from utils.errors import ArtifactIOError, GridRangeError, SceneGenerationError
from utils.units import delay_to_range


# --- grid ---

def test_grid_origin_maps_to_zero(prototype_params):
    idx = GridIndex(s=0, r=prototype_params.azimuth_bins // 2, u=prototype_params.P // 2)
    assert grid_to_physical(idx, prototype_params) == pytest.approx((0.0, 0.0, 0.0))


def test_grid_resolutions(prototype_params):
    tau_l, vartheta, f_D = grid_to_physical(GridIndex(s=1, r=1, u=1), prototype_params)

    assert delay_to_range(tau_l) == pytest.approx(1.25)
    assert vartheta - (-1.0) == pytest.approx(0.025)
    assert f_D - (-5000.0) == pytest.approx(1000.0)


def test_grid_endpoint(prototype_params):
    _, vartheta, _ = grid_to_physical(GridIndex(s=0, r=79, u=0), prototype_params)
    assert vartheta == pytest.approx(1.0 - 2.0 / 80)


def test_out_of_bounds_index(prototype_params):
    with pytest.raises(GridRangeError):
        check_index(GridIndex(s=prototype_params.range_bins, r=0, u=0), prototype_params)
    with pytest.raises(GridRangeError):
        grid_to_physical(GridIndex(s=0, r=-1, u=0), prototype_params)


def test_round_trip_every_cell(small_params):
    p = small_params
    for s, r, u in itertools.product(range(p.range_bins), range(p.azimuth_bins), range(p.P)):
        idx = GridIndex(s=s, r=r, u=u)
        assert physical_to_grid(target_at(idx, p), p) == idx


def test_half_bin_tie_rounds_up(small_params):
    cell = small_params.delay_cell
    target = Target(alpha=1.0, tau_l=4.5 * cell, vartheta=0.0, f_D=0.0)
    assert physical_to_grid(target, small_params).s == 5


def test_off_grid_error_is_half_a_bin(small_params, rng):
    p = small_params
    for tau_l in rng.uniform(0.0, p.tau * (1.0 - 1.0 / (2 * p.range_bins)), size=500):
        idx = physical_to_grid(Target(alpha=1.0, tau_l=tau_l, vartheta=0.0, f_D=0.0), p)
        assert abs(tau_l - grid_to_physical(idx, p)[0]) <= p.delay_cell / 2 + 1e-15


def test_grid_wraps_at_window_end(small_params):
    almost = small_params.tau * (1.0 - 0.1 / small_params.range_bins)
    assert physical_to_grid(Target(alpha=1.0, tau_l=almost, vartheta=0.0, f_D=0.0), small_params).s == 0


def test_azimuth_near_endfire_stays_in_last_bin(prototype_params):
    p = prototype_params
    for vartheta in (1.0 - 0.4 * p.azimuth_cell, 0.999, 1.0):
        idx = physical_to_grid(Target(alpha=1.0, tau_l=0.0, vartheta=vartheta, f_D=0.0), p)
        assert idx.r == p.azimuth_bins - 1
        assert abs(vartheta - grid_to_physical(idx, p)[1]) <= p.azimuth_cell

    assert physical_to_grid(Target(alpha=1.0, tau_l=0.0, vartheta=-1.0, f_D=0.0), p).r == 0


def test_off_grid_azimuth_error_is_half_a_bin(small_params, rng):
    p = small_params
    last_center = 1.0 - p.azimuth_cell
    for vartheta in rng.uniform(-1.0, last_center + p.azimuth_cell / 2, size=500):
        idx = physical_to_grid(Target(alpha=1.0, tau_l=0.0, vartheta=vartheta, f_D=0.0), p)
        assert abs(vartheta - grid_to_physical(idx, p)[1]) <= p.azimuth_cell / 2 + 1e-12


# --- random scenes ---

def test_random_scene_separation(prototype_params):
    scene = random_scene(10, prototype_params, 0.025, seed=3)

    assert scene.L == 10
    assert len(set(scene.grid)) == 10
    pairs = list(itertools.combinations(scene.targets, 2))
    assert len(pairs) == 45
    assert all(abs(a.vartheta - b.vartheta) >= 0.025 - 1e-12 for a, b in pairs)
    np.testing.assert_allclose([abs(t.alpha) for t in scene.targets], 1.0)


def test_random_scene_is_on_grid(prototype_params):
    scene = random_scene(6, prototype_params, seed=8)
    for target, idx in zip(scene.targets, scene.grid):
        assert physical_to_grid(target, prototype_params) == idx


def test_random_scene_determinism(prototype_params):
    assert random_scene(10, prototype_params, seed=11) == random_scene(10, prototype_params, seed=11)
    assert random_scene(10, prototype_params, seed=11) != random_scene(10, prototype_params, seed=12)


def test_empty_scene(prototype_params):
    scene = random_scene(0, prototype_params, seed=1)
    assert scene.L == 0
    assert scene.grid == ()


def test_unsatisfiable_separation(prototype_params):
    with pytest.raises(SceneGenerationError):
        random_scene(2, prototype_params, 2.0, seed=0)


def test_negative_target_count(prototype_params):
    with pytest.raises(SceneGenerationError):
        random_scene(-1, prototype_params)


def test_range_and_doppler_separation(small_params):
    sep = Separation(azimuth=0.0, range_bins=4, doppler_bins=0)
    scene = random_scene(5, small_params, sep, seed=21)
    for a, b in itertools.combinations(scene.grid, 2):
        assert abs(a.s - b.s) >= 4


def test_amplitude_spread(prototype_params):
    scene = random_scene(8, prototype_params, seed=4, amplitude_db_range=(-20.0, 0.0))
    moduli = np.array([abs(t.alpha) for t in scene.targets])
    assert np.all(moduli >= 0.1 - 1e-12)
    assert np.all(moduli <= 1.0 + 1e-12)
    assert moduli.std() > 0


# --- closely spaced scene ---

def test_closely_spaced_pairs(prototype_params):
    scene = closely_spaced_scene(prototype_params)

    assert scene.L == 4
    assert scene.grid is None
    varthetas = [t.vartheta for t in scene.targets]
    np.testing.assert_allclose(varthetas, [-0.31, -0.29, 0.39, 0.41], atol=1e-12)
    assert len({t.tau_l for t in scene.targets}) == 1
    assert all(t.f_D == 0.0 for t in scene.targets)


def test_closely_spaced_pair_shares_a_mode1_bin(prototype_params):
    bins = [physical_to_grid(t, prototype_params).r for t in closely_spaced_scene(prototype_params).targets]
    assert bins[0] == bins[1]
    assert bins[2] == bins[3]


def test_shipped_closely_spaced_scene(prototype_params):
    scene = load_closely_spaced(prototype_params)

    assert scene.L == 4
    assert scene.grid is None
    assert delay_to_range(scene.targets[0].tau_l) == pytest.approx(3750.0)
    gaps = [scene.targets[1].vartheta - scene.targets[0].vartheta, scene.targets[3].vartheta - scene.targets[2].vartheta]
    assert gaps == pytest.approx([0.02, 0.02])


# --- files ---

def test_scene_file_round_trip(tmp_path, prototype_params):
    scene = random_scene(5, prototype_params, seed=9)
    path = write_scene(scene, prototype_params, tmp_path / "scene.csv")
    loaded = read_scene(path, prototype_params)

    assert loaded.grid == scene.grid
    for a, b in zip(loaded.targets, scene.targets):
        assert a.alpha == b.alpha
        assert a.tau_l == pytest.approx(b.tau_l, rel=1e-12, abs=1e-20)
        assert a.vartheta == b.vartheta
        assert a.f_D == pytest.approx(b.f_D, rel=1e-12, abs=1e-9)


def test_off_grid_scene_file_has_no_grid(tmp_path, prototype_params):
    path = write_scene(closely_spaced_scene(prototype_params), prototype_params, tmp_path / "pairs.csv")
    assert read_scene(path, prototype_params).grid is None
    assert read_scene(path, prototype_params, on_grid=True).grid is not None


def test_malformed_scene_file(tmp_path, prototype_params):
    path = tmp_path / "bad.csv"
    path.write_text("alpha_re,alpha_im,range_m,sine_azimuth,velocity_mps\n1,0,abc,0,0\n", encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        read_scene(path, prototype_params)
