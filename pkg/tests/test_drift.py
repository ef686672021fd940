import numpy as np
import pytest

from nelsonlab import Grid1D, UnsupportedConfigError, diffusion_params, continue_to_imaginary
from nelsonlab.fields import WaveSolution, analytic_oracle, drift_fields
from nelsonlab.fields.drift import log_density_gradient
from nelsonlab.finitediff import gradient


def _interior(ws):
    m = ws.mask[0]
    out = m & np.roll(m, 2) & np.roll(m, -2)
    out[:2] = out[-2:] = False
    return out


def test_ground_state_drifts(grid801, ground, p_half):
    df = drift_fields(ground, p_half)
    sel = _interior(ground)
    x = grid801.x
    assert np.max(np.abs(df.b[0] + x)[sel]) < 1e-10       # b = -2 nu x
    assert np.max(np.abs(df.b_star[0] - x)[sel]) < 1e-10  # b* = +2 nu x


def test_osmotic_identity_exact_by_construction(ground, p_half):
    df = drift_fields(ground, p_half)
    resid = (df.b[0] - df.b_star[0]) / 2 - 0.5 * log_density_gradient(ground, 0)
    assert np.max(np.abs(resid)) == 0.0


def test_current_part_is_nu_independent(grid801, ground):
    k = 3.0
    psi_k = ground.psi[0] * np.exp(1j * k * grid801.x)
    ws_k = WaveSolution.from_psi(grid801, [0.0], psi_k[None, :])
    sel = _interior(ws_k)
    for nu in (0.5, 2.0):
        p = diffusion_params("nu", nu)
        base = drift_fields(ground, p).b[0]
        with_k = drift_fields(ws_k, p).b[0]
        assert np.max(np.abs(with_k - base - k)[sel]) < 1e-10


def test_osmotic_scaling_exact(grid801, ground):
    b1 = drift_fields(ground, diffusion_params("nu", 0.5)).b[0]
    b2 = drift_fields(ground, diffusion_params("nu", 2.0)).b[0]
    dR = gradient(ground.R[0], grid801.dx)
    assert np.max(np.abs(b2 - b1 - 2 * 1.5 * dR)) == 0.0


def test_continued_mode_rejected(ground, p_half):
    pc = continue_to_imaginary(p_half, "minus")
    with pytest.raises(UnsupportedConfigError):
        drift_fields(ground, pc)


def test_nodal_guard_caps_drift():
    g = Grid1D(-8.0, 8.0, 801)
    x = g.x
    psi = x * np.exp(-x ** 2 / 2)          # node at the origin
    psi = (psi / np.sqrt(g.trapezoid(np.abs(psi) ** 2))).astype(complex)
    ws = WaveSolution.from_psi(g, [0.0], psi[None, :])
    df = drift_fields(ws, diffusion_params("nu", 0.5), b_cap=100.0)
    assert np.all(np.isfinite(df.b))
    outside = ~ws.mask[0]
    assert np.max(np.abs(df.b[0][outside])) <= 100.0


def test_time_interpolation(grid801):
    times = [0.0, 1.0]
    ws = analytic_oracle("ho_coherent", {"x0": 1.0}, grid801, times)
    df = drift_fields(ws, diffusion_params("nu", 0.5))
    mid = df.b_on_grid(0.5)
    assert np.allclose(mid, 0.5 * (df.b[0] + df.b[1]))
    # clamping at the ends of the stored range
    assert np.array_equal(df.b_on_grid(-1.0), df.b[0])
    assert np.array_equal(df.b_on_grid(2.0), df.b[1])


def test_pointwise_interpolation_matches_linear(grid801, ground, p_half, rng):
    df = drift_fields(ground, p_half)
    x = rng.uniform(-8, 8, 5000)
    ref = np.interp(x, grid801.x, df.b_on_grid(0.0))
    assert np.max(np.abs(df.b_at(0.0, x) - ref)) < 1e-12
