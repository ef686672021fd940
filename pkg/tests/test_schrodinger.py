import numpy as np
import pytest

from nelsonlab import Grid1D, InputError
from nelsonlab.fields import analytic_oracle, free_gaussian_variance, solve_schrodinger


def test_zero_steps_returns_input(grid801, ground):
    V = 0.5 * grid801.x ** 2
    out = solve_schrodinger(V, ground.psi[0], grid801, 1e-3, 0)
    assert np.array_equal(out.psi[0], ground.psi[0])
    assert out.n_times == 1


def test_stationary_ground_state_density():
    g = Grid1D(-8.0, 8.0, 6401)
    ws = analytic_oracle("ho_ground", None, g, [0.0])
    sol = solve_schrodinger(0.5 * g.x ** 2, ws.psi[0], g, 1e-3, 1000,
                            store_every=500)
    drift = np.max(np.abs(np.abs(sol.psi[-1]) ** 2 - np.abs(sol.psi[0]) ** 2))
    assert drift < 1e-6


def test_norm_conserved_every_step(grid801):
    ws = analytic_oracle("ho_coherent", {"x0": 1.0}, grid801, [0.0])
    sol = solve_schrodinger(0.5 * grid801.x ** 2, ws.psi[0], grid801,
                            1e-3, 200, store_every=1)
    norms = sol.norms()
    assert np.max(np.abs(np.diff(norms))) < 1e-12


def test_free_packet_spreading_matches_law():
    g = Grid1D(-16.0, 16.0, 1601)
    ws = analytic_oracle("free_gaussian", {"sigma0": 1.0}, g, [0.0])
    sol = solve_schrodinger(np.zeros(g.n), ws.psi[0], g, 1e-3, 1000,
                            store_every=1000)
    var = g.trapezoid(g.x ** 2 * np.abs(sol.psi[-1]) ** 2)
    ref = free_gaussian_variance(1.0, 1.0)
    assert abs(var - ref) / ref < 5e-3


def test_rejects_bad_inputs(grid801, ground):
    V = 0.5 * grid801.x ** 2
    with pytest.raises(InputError):
        solve_schrodinger(V, 2.0 * ground.psi[0], grid801, 1e-3, 10)
    badV = V.copy()
    badV[3] = np.inf
    with pytest.raises(InputError):
        solve_schrodinger(badV, ground.psi[0], grid801, 1e-3, 10)
    with pytest.raises(InputError):
        solve_schrodinger(V, ground.psi[0], grid801, -1e-3, 10)
    with pytest.raises(InputError):
        solve_schrodinger(V[:-1], ground.psi[0], grid801, 1e-3, 10)


def test_partial_store_keeps_final_state(grid801, ground):
    V = 0.5 * grid801.x ** 2
    sol = solve_schrodinger(V, ground.psi[0], grid801, 1e-3, 25, store_every=10)
    assert sol.times[-1] == pytest.approx(0.025)
    assert sol.n_times == 4   # t = 0, 0.01, 0.02, 0.025
