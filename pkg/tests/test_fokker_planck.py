import numpy as np
import pytest

from nelsonlab import Grid1D, InputError, InstabilityError, diffusion_params
from nelsonlab.fields import (analytic_oracle, drift_fields,
                              evolve_density_fokker_planck, ho_ground_density,
                              l1_distance, solve_schrodinger)
from nelsonlab.fields.drift import DriftField


def _flat_drift(grid, nu):
    return DriftField(grid=grid, times=np.array([0.0]),
                      b=np.zeros((1, grid.n)), b_star=np.zeros((1, grid.n)),
                      params=diffusion_params("nu", nu), provenance="b=0")


def test_stationary_density_is_preserved():
    g = Grid1D(-8.0, 8.0, 4001)
    ws = analytic_oracle("ho_ground", None, g, [0.0])
    df = drift_fields(ws, diffusion_params("nu", 0.5))
    rho0 = ho_ground_density(g.x)
    rho0 /= g.trapezoid(rho0)
    ev = evolve_density_fokker_planck(df, rho0, 1e-3, 500)
    assert l1_distance(g, ev.final(), rho0) < 2e-6   # half a unit time


def test_pure_diffusion_variance_growth():
    g = Grid1D(-8.0, 8.0, 801)
    sig0 = 0.5
    rho0 = np.exp(-g.x ** 2 / (2 * sig0 ** 2))
    rho0 /= g.trapezoid(rho0)
    ev = evolve_density_fokker_planck(_flat_drift(g, 0.5), rho0, 1e-3, 500)
    var = g.trapezoid(g.x ** 2 * ev.final())
    assert abs(var - (sig0 ** 2 + 2 * 0.5 * 0.5)) < 1e-3


def test_mass_conserved_to_roundoff():
    g = Grid1D(-8.0, 8.0, 801)
    ws = analytic_oracle("ho_coherent", {"x0": 1.0}, g, [0.0])
    df = drift_fields(ws, diffusion_params("nu", 0.5))
    rho0 = ws.rho(0)
    rho0 /= g.trapezoid(rho0)
    ev = evolve_density_fokker_planck(df, rho0, 1e-3, 200, store_every=50)
    assert np.max(np.abs(ev.masses() - ev.masses()[0])) < 1e-12


def test_matches_wave_density_over_time():
    """Forward-equation evolution tracks exp(2R(t)) from the wave solver."""
    g = Grid1D(-8.0, 8.0, 801)
    ws0 = analytic_oracle("ho_coherent", {"x0": 1.0}, g, [0.0])
    dt = 1e-3
    n = 400
    sol = solve_schrodinger(0.5 * g.x ** 2, ws0.psi[0], g, dt, n, store_every=10)
    df = drift_fields(sol, diffusion_params("nu", 0.5))
    rho0 = np.exp(2 * sol.R[0])
    rho0 /= g.trapezoid(rho0)
    ev = evolve_density_fokker_planck(df, rho0, dt, n, store_every=n)
    ref = np.exp(2 * sol.R[-1])
    ref /= g.trapezoid(ref)
    assert l1_distance(g, ev.final(), ref) < 1e-3


def test_rejects_bad_density():
    g = Grid1D(-8.0, 8.0, 801)
    df = _flat_drift(g, 0.5)
    rho = ho_ground_density(g.x)
    with pytest.raises(InputError):
        evolve_density_fokker_planck(df, 2 * rho, 1e-3, 5)   # unnormalized
    bad = rho.copy()
    bad[0] = -0.1
    with pytest.raises(InputError):
        evolve_density_fokker_planck(df, bad, 1e-3, 5)


def test_sharp_spike_with_huge_step_reports_instability():
    g = Grid1D(-8.0, 8.0, 801)
    rho = np.zeros(g.n)
    rho[g.n // 2] = 1.0
    rho /= g.trapezoid(rho)
    with pytest.raises(InstabilityError):
        evolve_density_fokker_planck(_flat_drift(g, 0.5), rho, 5.0, 3)
