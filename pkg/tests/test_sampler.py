import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nelsonlab import (InputError, NumericalBreakdownError,
                       UnsupportedConfigError, diffusion_params,
                       continue_to_imaginary)
from nelsonlab.fields import drift_fields, ho_ground_density
from nelsonlab.sampler import (load_ensemble_binary, export_ensemble_binary,
                               export_ensemble_csv, reflect, sample_initial,
                               simulate_ensemble, stream_normals)
from nelsonlab.fields.drift import DriftField


def _flat_drift(grid, nu=0.5):
    return DriftField(grid=grid, times=np.array([0.0]),
                      b=np.zeros((1, grid.n)), b_star=np.zeros((1, grid.n)),
                      params=diffusion_params("nu", nu), provenance="b=0")


def test_sample_initial_moments(grid801):
    rho0 = ho_ground_density(grid801.x)
    x = sample_initial(rho0, grid801, 100_000, seed=5)
    se_mean = np.sqrt(0.5 / x.size)
    se_var = 0.5 * np.sqrt(2 / (x.size - 1))
    assert abs(x.mean()) < 3 * se_mean
    assert abs(x.var() - 0.5) < 3 * se_var


def test_sample_initial_edge_cases(grid801):
    rho0 = ho_ground_density(grid801.x)
    assert sample_initial(rho0, grid801, 0, 1).size == 0
    spike = np.zeros(grid801.n)
    spike[100] = 1.0
    xs = sample_initial(spike / grid801.trapezoid(spike), grid801, 500, 2)
    assert np.all(np.abs(xs - grid801.x[100]) <= grid801.dx)
    with pytest.raises(InputError):
        sample_initial(np.zeros(grid801.n), grid801, 10, 1)


def test_sample_initial_deterministic(grid801):
    rho0 = ho_ground_density(grid801.x)
    a = sample_initial(rho0, grid801, 1000, seed=7)
    b = sample_initial(rho0, grid801, 1000, seed=7)
    assert np.array_equal(a, b)
    c = sample_initial(rho0, grid801, 1000, seed=8)
    assert not np.array_equal(a, c)


def test_wiener_variance_law(grid801):
    """Driftless paths spread with variance exactly 2 nu t."""
    nu, dt, n = 0.5, 1e-3, 100_000
    df = _flat_drift(grid801, nu)
    e = simulate_ensemble(df, np.zeros(n), diffusion_params("nu", nu),
                          dt, 50, seed=11)
    t = 50 * dt
    var = e.positions(50).var()
    se = 2 * nu * t * np.sqrt(2.0 / n)
    assert abs(var - 2 * nu * t) < 3 * se


def test_ou_stationary_variance(grid801, ground, p_half):
    """Linear-drift ensemble relaxes to variance nu/gamma within 1%."""
    df = drift_fields(ground, p_half)
    rng = np.random.default_rng(0)
    x0 = rng.normal(0.0, 0.1, 100_000)      # start far from stationarity
    e = simulate_ensemble(df, x0, p_half, 5e-3, 2000, seed=13,
                          store_every=200)  # t = 10
    assert abs(e.positions(e.n_steps).var() - 0.5) / 0.5 < 0.01


def test_schedule_independence(grid801, ground, p_half):
    df = drift_fields(ground, p_half)
    x0 = sample_initial(ho_ground_density(grid801.x), grid801, 3000, seed=3)
    runs = [simulate_ensemble(df, x0, p_half, 1e-3, 30, seed=3, n_workers=w)
            for w in (1, 4, 8)]
    assert np.array_equal(runs[0].paths, runs[1].paths)
    assert np.array_equal(runs[0].paths, runs[2].paths)


def test_store_every_matches_dense_run(grid801, ground, p_half):
    df = drift_fields(ground, p_half)
    x0 = sample_initial(ho_ground_density(grid801.x), grid801, 500, seed=4)
    dense = simulate_ensemble(df, x0, p_half, 1e-3, 40, seed=4)
    thin = simulate_ensemble(df, x0, p_half, 1e-3, 40, seed=4, store_every=10)
    assert np.array_equal(thin.paths, dense.paths[:, ::10])
    assert thin.dt == pytest.approx(1e-2)
    assert thin.sde_dt == pytest.approx(1e-3)
    with pytest.raises(InputError):
        simulate_ensemble(df, x0, p_half, 1e-3, 41, seed=4, store_every=10)


def test_paths_stay_inside_box(grid801):
    nu = 2.0
    df = _flat_drift(grid801, nu)
    e = simulate_ensemble(df, np.full(2000, 7.9), diffusion_params("nu", nu),
                          0.05, 200, seed=21)
    assert e.paths.min() >= grid801.x_min
    assert e.paths.max() <= grid801.x_max


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-100, max_value=100, allow_nan=False))
def test_reflect_folds_into_box(x):
    y = reflect(np.array([x]), -8.0, 8.0)[0]
    assert -8.0 <= y <= 8.0
    if -8.0 <= x <= 8.0:
        assert y == pytest.approx(x)


def test_guards(grid801, ground, p_half):
    df = drift_fields(ground, p_half)
    with pytest.raises(UnsupportedConfigError):
        simulate_ensemble(df, np.zeros(5),
                          continue_to_imaginary(p_half, "minus"), 1e-3, 5, 1)
    with pytest.raises(InputError):
        simulate_ensemble(df, np.zeros(5), p_half, 1.0, 5, 1)  # max|b| dt
    with pytest.raises(NumericalBreakdownError):
        simulate_ensemble(df, np.array([0.0, np.inf]), p_half, 1e-3, 3, 1)


def test_stream_normals_are_standard():
    z = stream_normals(99, 0, 200_000)
    assert abs(z.mean()) < 3 / np.sqrt(z.size)
    assert abs(z.var() - 1.0) < 3 * np.sqrt(2.0 / z.size)
    # distinct steps decorrelate
    z2 = stream_normals(99, 1, 200_000)
    assert abs(np.corrcoef(z, z2)[0, 1]) < 3 / np.sqrt(z.size)


def test_ensemble_io_roundtrip(tmp_path, grid801, ground, p_half):
    df = drift_fields(ground, p_half)
    x0 = sample_initial(ho_ground_density(grid801.x), grid801, 50, seed=6)
    e = simulate_ensemble(df, x0, p_half, 1e-3, 5, seed=6)
    binpath = export_ensemble_binary(tmp_path / "e.bin", e)
    back = load_ensemble_binary(binpath)
    assert np.array_equal(back, e.paths)
    csvpath = export_ensemble_csv(tmp_path / "e.csv", e)
    lines = csvpath.read_text().splitlines()
    assert lines[0] == "path_id,step,x"
    assert len(lines) == 1 + 50 * 6
