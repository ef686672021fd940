import numpy as np
import pytest

from nelsonlab import (Grid1D, EmptyMaskError, UnsupportedConfigError,
                       diffusion_params, continue_to_imaginary)
from nelsonlab.algebra import (acceleration_function, averaging_matrix,
                               build_space, commutator, density_curvature,
                               gauge_map, hamiltonian,
                               mapped_velocity_operator, momentum_operator,
                               position_operator, rho_term_coefficient,
                               velocity_operator)
from nelsonlab.fields import analytic_oracle, drift_fields


@pytest.fixture(scope="module")
def setup():
    grid = Grid1D(-8.0, 8.0, 1025)   # dyadic spacing
    ground = analytic_oracle("ho_ground", None, grid, [0.0])
    p = diffusion_params("nu", 0.5)
    return grid, ground, p


def test_position_operator_basics(setup, rng):
    grid, ground, p = setup
    sp = build_space(grid, "H_t", ground.rho(0))
    X = position_operator(sp)
    f = rng.standard_normal(grid.n)
    assert np.array_equal(X.apply(np.ones(grid.n)), grid.x)
    # self-adjoint in any weighted space
    g = rng.standard_normal(grid.n)
    assert sp.inner(f, X.apply(g)) == pytest.approx(sp.inner(X.apply(f), g))
    assert np.max(np.abs(commutator(X, X))) == 0.0


def test_velocity_commutator_is_exactly_2nu_averaging(setup):
    grid, ground, _ = setup
    A = averaging_matrix(grid.n)
    for nu in (0.5, 1.0, 2.0):
        p = diffusion_params("nu", nu)
        df = drift_fields(ground, p)
        sp = build_space(grid, "H_t", ground.rho(0))
        C = commutator(velocity_operator(df, p, sp), position_operator(sp))
        assert np.max(np.abs((C - 2 * nu * A)[1:-1, :])) == 0.0


def test_velocity_on_constant_gives_drift(setup):
    grid, ground, p = setup
    df = drift_fields(ground, p)
    sp = build_space(grid, "H_t", ground.rho(0))
    vel = velocity_operator(df, p, sp)
    out = vel.apply(np.ones(grid.n))
    sel = ground.mask[0].copy()
    sel[:2] = sel[-2:] = False
    assert np.max(np.abs(out - df.b[0])[sel]) < 1e-12


def test_mapped_velocity_and_momentum(setup):
    grid, _, p = setup
    sp = build_space(grid, "L2")
    mv = mapped_velocity_operator(p, sp)
    from nelsonlab.algebra import closed_derivative_matrix
    D = closed_derivative_matrix(grid.n, grid.dx)
    assert np.array_equal(mv.matrix, D)        # 2 nu = 1 at nu = 0.5
    pc = continue_to_imaginary(p, "minus")
    P = momentum_operator(pc, sp)
    assert np.max(np.abs(P.matrix - (-1j * D))) == 0.0
    assert np.max(np.abs(P.matrix - P.matrix.conj().T)) == 0.0
    with pytest.raises(UnsupportedConfigError):
        momentum_operator(p, sp)
    with pytest.raises(UnsupportedConfigError):
        velocity_operator(drift_fields(analytic_oracle("ho_ground", None,
                                                       grid, [0.0]), p),
                          pc, sp)


def test_gauge_map_norm_preservation(setup, rng):
    grid, _, _ = setup
    ws = analytic_oracle("ho_coherent", {"x0": 1.0}, grid, [0.6])
    for p in (diffusion_params("nu", 0.5),
              continue_to_imaginary(diffusion_params("nu", 0.5), "minus")):
        Ht = build_space(grid, "H_t", ws.rho(0))
        It = build_space(grid, "I_t", ws.S[0], p)
        for _ in range(10):
            f = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
            g = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
            lhs = Ht.inner(f, g)
            rhs = It.inner(gauge_map(f, ws.R[0], ws.S[0], p),
                           gauge_map(g, ws.R[0], ws.S[0], p))
            assert abs(lhs - rhs) < 1e-10


def test_gauge_map_intertwines_velocity(setup):
    """T(velocity f) = 2 nu d/dx (T f) within truncation error."""
    grid, ground, p = setup
    df = drift_fields(ground, p)
    Ht = build_space(grid, "H_t", ground.rho(0))
    vel = velocity_operator(df, p, Ht)
    f = np.exp(-grid.x ** 2 / 3) * np.sin(grid.x)
    lhs = gauge_map(vel.apply(f), ground.R[0], ground.S[0], p)
    Tf = gauge_map(f, ground.R[0], ground.S[0], p)
    rhs = mapped_velocity_operator(p, Ht).apply(Tf)
    sel = ground.rho(0) > 1e-3 * ground.rho(0).max()
    sel[:2] = sel[-2:] = False
    assert np.max(np.abs(lhs - rhs)[sel]) < 5e-4


def test_gauge_map_of_unit_is_sqrt_density(setup):
    grid, ground, p = setup
    t1 = gauge_map(np.ones(grid.n), ground.R[0], ground.S[0], p)
    assert np.max(np.abs(t1 - np.exp(ground.R[0]))) < 1e-14


def test_acceleration_fields_ground_state(setup):
    grid, ground, _ = setup
    V = 0.5 * grid.x ** 2
    for nu, coeff in ((0.5, 1.0), (1.0, 2.5)):
        p = diffusion_params("nu", nu)
        acc = acceleration_function(ground, p, V, compare_floor=1e-3)
        assert acc.max_gap() < 5e-3 * max(1.0, coeff)
        i = np.argmin(np.abs(grid.x - 1.0))
        assert abs(acc.from_drift[i] - 4 * nu ** 2) < 1e-8
    with pytest.raises(UnsupportedConfigError):
        acceleration_function(ground, continue_to_imaginary(
            diffusion_params("nu", 0.5), "minus"), V)


def test_acceleration_mask_too_small():
    grid = Grid1D(-8.0, 8.0, 801)
    ws = analytic_oracle("ho_ground", None, grid, [0.0])
    with pytest.raises(EmptyMaskError):
        acceleration_function(ws, diffusion_params("nu", 0.5),
                              0.5 * grid.x ** 2, compare_floor=1.1)


def test_rho_term_coefficient_vanishes_when_continued():
    for sign in ("minus", "plus"):
        pc = continue_to_imaginary(diffusion_params("nu", 0.5), sign)
        assert rho_term_coefficient(pc) == 0.0
    assert rho_term_coefficient(diffusion_params("nu", 0.5)) == pytest.approx(1.0)


def test_hamiltonian_on_constant_function(setup):
    """Real-mode H applied to 1: the kinetic part drops, leaving the diag."""
    grid, ground, p = setup
    V = 0.5 * grid.x ** 2
    sp = build_space(grid, "H_t", ground.rho(0))
    H = hamiltonian(ground, p, V, sp)
    out = H.apply(np.ones(grid.n))
    q, qmask = density_curvature(ground, 0)
    sel = qmask & (ground.rho(0) > 1e-3 * ground.rho(0).max())
    sel[:2] = sel[-2:] = False
    ref = V - 1.0 * (grid.x ** 2 - 1.0)       # coefficient = 1 at nu = 1/2
    assert np.max(np.abs(out - ref)[sel]) < 2e-4


def test_hamiltonian_continued_spectrum(grid801):
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    sp = build_space(grid801, "L2")
    H = hamiltonian(None, pc, 0.5 * grid801.x ** 2, sp)
    lam = np.linalg.eigvalsh(H.matrix[1:-1, 1:-1].real)
    assert abs(lam[0] - 0.5) < 1e-4
    assert abs(lam[1] - 1.5) < 1e-4
