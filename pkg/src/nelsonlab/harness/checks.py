"""The named checks of the verification suite.

Each check returns one or more CheckRecords.  ``fast`` checks are
deterministic identity/solver checks (seconds total); ``full`` adds the
seeded Monte Carlo checks (a couple of minutes at the default path
count).  Statistical assertions distinguish failure from insufficient
occupancy: starved bins make a check inconclusive, not red.

Three checks assert statements that cannot hold on any finite grid or at
any finite path count (see their docstrings); they are registered with
``known_unattainable`` so they report honestly without flipping the
aggregate, and each sits next to the exact or convergent form of the
same content, which must pass.
"""
from __future__ import annotations

import numpy as np

from ..algebra import (averaging_matrix, build_space, commutator, correlation,
                       gauge_map, hamiltonian, heisenberg_operator,
                       mapped_velocity_operator, momentum_operator,
                       position_operator, rho_term_coefficient,
                       taylor_heisenberg, time_derivative_recursion,
                       two_time_position_correlation, velocity_operator,
                       acceleration_function)
from ..errors import DomainError
from ..fields import (analytic_oracle, decompose, diffusion_params,
                      continue_to_imaginary, drift_fields,
                      evolve_density_fokker_planck, free_gaussian_variance,
                      ho_ground_density, l1_distance, solve_schrodinger)
from ..fields.drift import DriftField
from ..grids import Grid1D
from ..params import MODE_MINUS, MODE_PLUS
from ..sampler import (Ensemble, density_histogram, estimate_backward_drift,
                       estimate_forward_drift, estimate_mean_acceleration,
                       estimate_quadratic_variation, histogram_l1_distance,
                       reflect, sample_initial, simulate_ensemble)
from ..sampler import rng as srng
from .config import ExperimentConfig
from .report import FAIL, INCONCLUSIVE, PASS, CheckRecord, digest

MIN_ASSERT_COUNT = 500


class CheckContext:
    """Shared lazily-computed inputs for the checks of one run."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.cache: dict = {}
        self.artifacts: dict = {}

    # dyadic grid: binary-exact spacing makes the exact identities exact in
    # floating point too (all stencil entries are dyadic rationals)
    @property
    def dyadic_grid(self) -> Grid1D:
        return Grid1D(-8.0, 8.0, 1025)

    @property
    def grid(self) -> Grid1D:
        return self.cfg.grid

    def memo(self, key, builder):
        if key not in self.cache:
            self.cache[key] = builder()
        return self.cache[key]

    def ho_ground(self, grid: Grid1D):
        return self.memo(("ho_ground", grid.n, grid.x_min),
                         lambda: analytic_oracle("ho_ground", None, grid, [0.0]))

    def ou_drift(self, nu: float, grid: Grid1D | None = None) -> DriftField:
        grid = grid or self.grid
        p = diffusion_params("nu", nu)
        return self.memo(("ou_drift", nu, grid.n),
                         lambda: drift_fields(self.ho_ground(grid), p))

    def ou_ensemble(self, nu: float, dt: float, n_steps: int,
                    store_every: int = 1) -> Ensemble:
        """Ground-state-drift ensemble started from its stationary law."""
        def build():
            grid = self.grid
            p = diffusion_params("nu", nu)
            rho0 = ho_ground_density(grid.x)
            x0 = sample_initial(rho0, grid, self.cfg.sde.n_paths,
                                self.cfg.sde.seed)
            return simulate_ensemble(self.ou_drift(nu), x0, p, dt, n_steps,
                                     self.cfg.sde.seed,
                                     store_every=store_every)
        return self.memo(("ou_ensemble", nu, dt, n_steps, store_every,
                          self.cfg.sde.n_paths, self.cfg.sde.seed), build)

    def tol(self, name: str, default: float) -> float:
        return float(self.cfg.tolerances.get(name, default))

    def record(self, name, anchor, status, *, measured=None, reference=None,
               tolerance=None, std_error=None, oracle="", notes="",
               known_unattainable=False, inputs=None) -> CheckRecord:
        return CheckRecord(
            name=name, anchor=anchor, status=status,
            measured=measured or {}, reference=reference or {},
            tolerance=tolerance, std_error=std_error,
            inputs_digest=digest(inputs if inputs is not None
                                 else self.cfg.digest_payload()),
            oracle=oracle, notes=notes, known_unattainable=known_unattainable)


def _status(value: float, tol: float) -> str:
    return PASS if value < tol else FAIL


# --------------------------------------------------------------------------
# fast: parameterization, fields, solvers
# --------------------------------------------------------------------------

def check_family_parameterization(ctx: CheckContext):
    tol = ctx.tol("family_parameterization", 1e-12)
    devs = []
    p0 = diffusion_params("beta", 0.0)
    devs.append(abs(p0.nu - 0.5))          # nu = hbar/2m at beta = 0
    devs.append(abs(p0.z - 1.0))
    p32 = diffusion_params("beta", 1.5)
    devs.append(abs(p32.z - 2.0))          # z = 1/sqrt(1 - 3/4) = 2
    devs.append(abs(p32.nu - 1.0))         # nu = z hbar/2m = 1
    rejected = False
    try:
        diffusion_params("beta", 2.0)
    except DomainError:
        rejected = True
    for nu in (0.5, 1.0, 2.0):
        p = diffusion_params("nu", nu)
        devs.append(abs(2.0 * p.nu / p.z - p.hbar / p.m))
    for sign in ("minus", "plus"):
        pc = continue_to_imaginary(p0, sign)
        devs.append(abs(2.0 * pc.nu / pc.z - pc.hbar / pc.m))
        devs.append(abs(pc.nu - (1j if sign == "plus" else -1j) * 0.5))
    worst = float(max(devs))
    ok = worst < tol and rejected
    return [ctx.record(
        "family_parameterization", "family-parameterization",
        PASS if ok else FAIL,
        measured={"max_relation_deviation": worst, "beta_2_rejected": rejected},
        reference={"beta=0": "nu = hbar/2m", "beta=1.5": "z = 2, nu = hbar/m",
                   "always": "2 nu / z = hbar / m"},
        tolerance=tol, oracle="closed forms of the parameter relations")]


def check_wave_decomposition(ctx: CheckContext):
    tol = ctx.tol("wave_decomposition", 1e-8)
    grid = ctx.grid
    ws = ctx.ho_ground(grid)
    R_exact = -grid.x ** 2 / 2 - 0.25 * np.log(np.pi)
    m = ws.mask[0]
    r_err = float(np.max(np.abs(ws.R[0] - R_exact)[m]))
    s_err = float(np.max(np.abs(ws.S[0][m])))
    rt = ws.roundtrip_error(0)
    # plane-wave phase winding: S - k x constant across many turns
    k = 5.0
    psi = np.exp(R_exact) * np.exp(1j * k * grid.x)
    R2, S2, m2 = decompose(psi, 1e-12)
    lin = S2[m2] - k * grid.x[m2]
    unwrap_err = float(np.ptp(lin))
    norm_dev = float(np.max(np.abs(ws.norms() - 1.0)))
    worst = max(r_err, s_err, rt, unwrap_err)
    notes = (f"R err {r_err:.2e}, S err {s_err:.2e}, roundtrip {rt:.2e}, "
             f"unwrap flatness {unwrap_err:.2e}, norm dev {norm_dev:.2e}")
    return [ctx.record(
        "wave_decomposition", "wave-decomposition",
        _status(max(worst, norm_dev / 1e-2), tol),
        measured={"max_deviation": worst, "norm_deviation": norm_dev},
        reference={"R": "-x^2/2 - ln(pi)/4", "S": "0 / k x + const"},
        tolerance=tol, oracle="ground-state closed form; plane-wave phase",
        notes=notes)]


def check_schrodinger_stationary(ctx: CheckContext):
    # the sampled analytic state mixes O(dx^2) of higher discrete modes,
    # whose beating bounds the density drift; dx = 0.0025 puts it ~4e-7
    tol = ctx.tol("schrodinger_stationary", 1e-6)
    grid = Grid1D(-8.0, 8.0, 6401)
    ws0 = ctx.ho_ground(grid)
    V = 0.5 * grid.x ** 2
    sol = solve_schrodinger(V, ws0.psi[0], grid, 1e-3, 1000, store_every=100)
    dens_err = float(np.max(np.abs(np.abs(sol.psi[-1]) ** 2
                                   - np.abs(sol.psi[0]) ** 2)))
    norms = sol.norms()
    norm_drift = float(np.max(np.abs(np.diff(norms)))) / 100.0  # per step
    ok = dens_err < tol and norm_drift < 1e-12
    return [ctx.record(
        "schrodinger_stationary", "schrodinger-dynamics",
        PASS if ok else FAIL,
        measured={"density_Linf_drift_T=1": dens_err,
                  "norm_drift_per_step": norm_drift},
        reference={"density": "static", "norm": "conserved"},
        tolerance=tol, oracle="stationary ground state",
        notes=f"unitarity drift/step {norm_drift:.2e}")]


def check_free_packet_spreading(ctx: CheckContext):
    tol = ctx.tol("free_packet_spreading", 5e-3)
    grid = Grid1D(-16.0, 16.0, 1601)
    ws = analytic_oracle("free_gaussian", {"sigma0": 1.0}, grid, [0.0])
    sol = solve_schrodinger(np.zeros(grid.n), ws.psi[0], grid, 1e-3, 1000,
                            store_every=1000)
    rho = np.abs(sol.psi[-1]) ** 2
    var = float(grid.trapezoid(grid.x ** 2 * rho))
    ref = free_gaussian_variance(1.0, 1.0)
    rel = abs(var - ref) / ref
    return [ctx.record(
        "free_packet_spreading", "schrodinger-dynamics", _status(rel, tol),
        measured={"variance_T=1": var, "relative_error": rel},
        reference={"variance": ref}, tolerance=tol,
        oracle="free-packet spreading law sigma0^2 (1 + (t/2 sigma0^2)^2)")]


def check_drift_closed_forms(ctx: CheckContext):
    tol = ctx.tol("drift_closed_forms", 1e-10)
    grid = ctx.grid
    ws = ctx.ho_ground(grid)
    # erode the mask so the closed forms are compared away from the clamp
    # plateau at the mask edges (where R flattens by construction)
    m = ws.mask[0]
    interior = m & np.roll(m, 2) & np.roll(m, -2)
    interior[:2] = interior[-2:] = False
    devs = {}
    dR = None
    bs = {}
    for nu in (0.5, 1.0, 2.0):
        p = diffusion_params("nu", nu)
        df = drift_fields(ws, p)
        devs[f"b_nu={nu}"] = float(np.max(np.abs(
            df.b[0] + 2 * nu * grid.x)[interior]))
        devs[f"b_star_nu={nu}"] = float(np.max(np.abs(
            df.b_star[0] - 2 * nu * grid.x)[interior]))
        # osmotic identity is exact by construction
        from ..fields.drift import log_density_gradient
        osm = (df.b[0] - df.b_star[0]) / 2 - nu * log_density_gradient(ws, 0)
        devs[f"osmotic_nu={nu}"] = float(np.max(np.abs(osm)))
        bs[nu] = df.b[0]
        if dR is None:
            from ..finitediff import gradient
            dR = gradient(ws.R[0], grid.dx)
    # scaling: b(nu2) - b(nu1) = 2 (nu2 - nu1) dR exactly
    devs["scaling"] = float(np.max(np.abs(bs[2.0] - bs[0.5]
                                          - 2 * 1.5 * dR)))
    # plane-wave phase adds (hbar/m) k to b, independent of nu
    k = 3.0
    psi_k = ws.psi[0] * np.exp(1j * k * grid.x)
    from ..fields.wave import WaveSolution
    ws_k = WaveSolution.from_psi(grid, [0.0], psi_k[None, :])
    for nu in (0.5, 2.0):
        p = diffusion_params("nu", nu)
        bk = drift_fields(ws_k, p).b[0]
        b0 = bs[nu]
        devs[f"current_part_nu={nu}"] = float(np.max(np.abs(
            (bk - b0 - k))[interior]))
    worst = float(max(devs.values()))
    return [ctx.record(
        "drift_closed_forms", "drift-definition", _status(worst, tol),
        measured=devs, reference={"b": "-2 nu x", "b_star": "+2 nu x",
                                  "current": "+ (hbar/m) k"},
        tolerance=tol, oracle="ground-state and plane-wave closed forms",
        notes="osmotic/scaling identities hold by construction")]


def check_fokker_planck_forward(ctx: CheckContext):
    # stationarity residual of the flux scheme is O(dx^2); dx = 0.002
    # leaves ~6e-7 of L1 drift per unit time against the 1e-6 bound
    tol = ctx.tol("fokker_planck_forward", 1e-6)
    grid = Grid1D(-8.0, 8.0, 8001)
    nu = 0.5
    df = ctx.ou_drift(nu, grid)
    rho0 = ho_ground_density(grid.x)
    rho0 = rho0 / grid.trapezoid(rho0)
    ev = evolve_density_fokker_planck(df, rho0, 1e-3, 1000, store_every=1000)
    stat_l1 = l1_distance(grid, ev.final(), rho0)
    mass_drift = float(np.max(np.abs(ev.masses() - ev.masses()[0])))
    # pure diffusion: variance grows by 2 nu t
    flat_b = DriftField(grid=grid, times=np.array([0.0]),
                        b=np.zeros((1, grid.n)), b_star=np.zeros((1, grid.n)),
                        params=diffusion_params("nu", nu), provenance="b=0")
    sig0 = 0.5
    g0 = np.exp(-grid.x ** 2 / (2 * sig0 ** 2)) / np.sqrt(2 * np.pi * sig0 ** 2)
    g0 = g0 / grid.trapezoid(g0)
    T = 0.5
    ev2 = evolve_density_fokker_planck(flat_b, g0, 1e-3, 500, store_every=500)
    var = float(grid.trapezoid(grid.x ** 2 * ev2.final())
                - grid.trapezoid(grid.x * ev2.final()) ** 2)
    var_ref = sig0 ** 2 + 2 * nu * T
    var_rel = abs(var - var_ref) / var_ref
    ok = stat_l1 < tol and mass_drift < 1e-10 and var_rel < 1e-3
    return [ctx.record(
        "fokker_planck_forward", "forward-equation",
        PASS if ok else FAIL,
        measured={"stationary_L1_per_unit_time": stat_l1,
                  "mass_drift": mass_drift,
                  "pure_diffusion_variance_rel_err": var_rel},
        reference={"stationary": "unchanged", "variance_growth": "2 nu t"},
        tolerance=tol,
        oracle="stationary density of the linear-drift process; diffusion law",
        notes=f"conservation to {mass_drift:.1e}")]


# --------------------------------------------------------------------------
# fast: operator algebra
# --------------------------------------------------------------------------

def _random_fields(n, count, seed=7, complex_fields=False):
    g = np.random.default_rng(seed)
    if complex_fields:
        return [g.standard_normal(n) + 1j * g.standard_normal(n)
                for _ in range(count)]
    return [g.standard_normal(n) for _ in range(count)]


def check_commutator_exact(ctx: CheckContext):
    """[velocity, X] = 2 nu A exactly (A = discrete averaging unit)."""
    from ..algebra import residual_report
    tol = ctx.tol("commutator_exact", 1e-12)
    grid = ctx.dyadic_grid
    ws = ctx.ho_ground(grid)
    A = averaging_matrix(grid.n)
    devs = {}
    reports = ctx.artifacts.setdefault(
        "identity_residuals", {"kind": "residual_report", "reports": []})
    for nu in (0.5, 1.0, 2.0):
        p = diffusion_params("nu", nu)
        df = ctx.ou_drift(nu, grid)
        space = build_space(grid, "H_t", ws.rho(0))
        X = position_operator(space)
        vel = velocity_operator(df, p, space)
        C = commutator(vel, X)
        devs[f"nu={nu}"] = float(np.max(np.abs((C - 2 * nu * A)[1:-1, :])))
        devs[f"[X,X]_nu={nu}"] = float(np.max(np.abs(commutator(X, X))))
        reports["reports"].append(residual_report(
            "commutator_velocity_position_vs_2nuA", grid, p,
            devs[f"nu={nu}"], tol))
    worst = float(max(devs.values()))
    return [ctx.record(
        "commutator_exact", "commutation-rules", _status(worst, tol),
        measured=devs,
        reference={"identity": "[velocity, X] = 2 nu A with A the "
                               "neighbor-average unit; [X, X] = 0"},
        tolerance=tol, oracle="exact matrix identity on a dyadic grid",
        notes="A acts as the identity at second order on smooth fields")]


def check_commutator_pointwise_literal(ctx: CheckContext):
    """Literal pointwise form ([v,X]f)_i = 2 nu f_i on random fields.

    Unattainable on any finite grid: for X = diag(x), every commutator
    [M, X] has entries M_ij (x_j - x_i), which vanish on the diagonal, so
    the coefficient of f_i in ([M,X]f)_i is exactly zero and the residual
    against 2 nu f_i is 2 nu |f_i| at unit scale.  The exact discrete
    statement is the companion check (residual against 2 nu A f, which is
    zero to machine precision; A f - f = (dx^2/2) f'' on smooth fields).
    """
    tol = ctx.tol("commutator_pointwise_literal", 1e-12)
    grid = Grid1D(-8.0, 8.0, 801)
    ws = ctx.ho_ground(grid)
    p = diffusion_params("nu", 0.5)
    df = ctx.ou_drift(0.5, grid)
    space = build_space(grid, "H_t", ws.rho(0))
    X = position_operator(space)
    vel = velocity_operator(df, p, space)
    C = commutator(vel, X)
    worst = 0.0
    for f in _random_fields(grid.n, 20):
        r = (C @ f - 2 * p.nu_real * f)[1:-1]
        worst = max(worst, float(np.max(np.abs(r))))
    smooth = np.exp(-grid.x ** 2 / 4) * np.sin(2 * grid.x)
    smooth_resid = float(np.max(np.abs((C @ smooth
                                        - 2 * p.nu_real * smooth)[1:-1])))
    return [ctx.record(
        "commutator_pointwise_literal", "commutation-rules",
        _status(worst, tol), known_unattainable=True,
        measured={"max_residual_random_fields": worst,
                  "residual_smooth_field": smooth_resid},
        reference={"stated": "< 1e-12 pointwise on random fields"},
        tolerance=tol, oracle="n/a (see notes)",
        notes="no finite matrix pair can satisfy [M, diag(x)] = c*1: the "
              "commutator diagonal vanishes entrywise; residual is O(|f|) "
              "for rough fields and nu dx^2 |f''| for smooth ones "
              f"(= {smooth_resid:.1e} here); the exact discrete identity "
              "is verified at machine precision by commutator_exact")]


def check_canonical_algebra(ctx: CheckContext):
    tol = ctx.tol("canonical_algebra", 1e-12)
    grid = ctx.dyadic_grid
    A = averaging_matrix(grid.n)
    devs = {}
    base = diffusion_params("nu", 0.5)
    for sign, mode in (("minus", MODE_MINUS), ("plus", MODE_PLUS)):
        pc = continue_to_imaginary(base, sign)
        space = build_space(grid, "L2")
        X = position_operator(space)
        P = momentum_operator(pc, space)
        want = 1j * pc.hbar if sign == "minus" else -1j * pc.hbar
        C = commutator(X, P)
        devs[f"[X,P]-{sign}"] = float(np.max(np.abs(
            (C - want * A)[1:-1, :])))
        coeff = rho_term_coefficient(pc)
        devs[f"rho_coefficient_{sign}"] = abs(coeff)
        # z * (S/z) = S: the fixed phase is branch independent
        S = np.sin(grid.x)
        devs[f"phase_invariant_{sign}"] = float(np.max(np.abs(
            pc.z * (S / pc.z) - S)))
        mv = mapped_velocity_operator(pc, space)
        devs[f"P=m*mapped_{sign}"] = float(np.max(np.abs(
            P.matrix - pc.m * mv.matrix)))
        # momentum is exactly hermitian in the flat space
        devs[f"P_hermitian_{sign}"] = float(np.max(np.abs(
            P.matrix - P.matrix.conj().T)))
    worst = float(max(devs.values()))
    return [ctx.record(
        "canonical_algebra", "continuation-algebra", _status(worst, tol),
        measured=devs,
        reference={"[X,P]": "+i hbar A on the minus branch",
                   "rho_coefficient": "exactly 0", "z*(S/z)": "S"},
        tolerance=tol,
        oracle="exact matrix identities; exact cancellation of the "
               "density-term coefficient")]


def check_canonical_pointwise_literal(ctx: CheckContext):
    """Literal ([X,P]f)_i = i hbar f_i on random fields; see the commutator
    twin for why this cannot hold in finite dimensions."""
    tol = ctx.tol("canonical_pointwise_literal", 1e-12)
    grid = Grid1D(-8.0, 8.0, 801)
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    space = build_space(grid, "L2")
    X = position_operator(space)
    P = momentum_operator(pc, space)
    C = commutator(X, P)
    worst = 0.0
    for f in _random_fields(grid.n, 20, complex_fields=True):
        r = (C @ f - 1j * pc.hbar * f)[1:-1]
        worst = max(worst, float(np.max(np.abs(r))))
    coeff = abs(rho_term_coefficient(pc))
    return [ctx.record(
        "canonical_pointwise_literal", "continuation-algebra",
        _status(worst, tol), known_unattainable=True,
        measured={"max_residual_random_fields": worst,
                  "rho_coefficient": coeff},
        reference={"stated": "< 1e-12 pointwise on random fields;"
                             " coefficient exactly 0"},
        tolerance=tol, oracle="n/a (see notes)",
        notes="same diagonal obstruction as the real-mode commutator; the "
              "exact discrete form [X, P] = i hbar A passes at machine "
              "precision (canonical_algebra), and the coefficient clause "
              f"holds exactly ({coeff:.1f})")]


def check_tmap_unitarity(ctx: CheckContext):
    tol = ctx.tol("tmap_unitarity", 1e-10)
    grid = ctx.grid
    states = {
        "ho_ground(t=0.3)": analytic_oracle("ho_ground", None, grid, [0.3]),
        "ho_coherent(t=0.7)": analytic_oracle("ho_coherent", {"x0": 1.0},
                                              grid, [0.7]),
    }
    plist = [diffusion_params("nu", 0.5), diffusion_params("nu", 2.0),
             continue_to_imaginary(diffusion_params("nu", 0.5), "minus"),
             continue_to_imaginary(diffusion_params("nu", 0.5), "plus")]
    g = np.random.default_rng(11)
    worst = 0.0
    details = {}
    for sname, ws in states.items():
        rho = ws.rho(0)
        for p in plist:
            Ht = build_space(grid, "H_t", rho)
            It = build_space(grid, "I_t", ws.S[0], p)
            dev = 0.0
            for _ in range(25):
                f = g.standard_normal(grid.n) + 1j * g.standard_normal(grid.n)
                h = g.standard_normal(grid.n) + 1j * g.standard_normal(grid.n)
                lhs = Ht.inner(f, h)
                rhs = It.inner(gauge_map(f, ws.R[0], ws.S[0], p),
                               gauge_map(h, ws.R[0], ws.S[0], p))
                dev = max(dev, abs(lhs - rhs))
            details[f"{sname},{p.mode},nu={p.nu:g}"] = dev
            worst = max(worst, dev)
    # f = 1 maps to sqrt(rho) when the phase vanishes
    ws0 = ctx.ho_ground(grid)
    p0 = diffusion_params("nu", 1.0)
    t1 = gauge_map(np.ones(grid.n), ws0.R[0], ws0.S[0], p0)
    sq_dev = float(np.max(np.abs(t1 - np.exp(ws0.R[0]))))
    worst = max(worst, sq_dev)
    return [ctx.record(
        "tmap_unitarity", "isometry-map", _status(worst, tol),
        measured={"max_inner_product_gap": worst,
                  "unit_maps_to_sqrt_rho": sq_dev},
        reference={"identity": "(f,g) density-weighted = ((Tf,Tg)) gauge image"},
        tolerance=tol,
        oracle="pointwise weight cancellation (100 random pairs per case)",
        notes="; ".join(f"{k}: {v:.1e}" for k, v in list(details.items())[:4]))]


def check_recursion_velocity(ctx: CheckContext):
    from ..algebra import residual_report
    tol = ctx.tol("recursion_velocity", 1e-12)
    grid = ctx.dyadic_grid
    ws = ctx.ho_ground(grid)
    V = 0.5 * grid.x ** 2
    devs = {}
    reports = ctx.artifacts.setdefault(
        "identity_residuals", {"kind": "residual_report", "reports": []})
    for nu in (0.5, 1.0, 2.0):
        p = diffusion_params("nu", nu)
        space = build_space(grid, "H_t", ws.rho(0))
        H = hamiltonian(ws, p, V, space)
        X = position_operator(space)
        X1 = time_derivative_recursion(X, H, p, 1)[0]
        mv = mapped_velocity_operator(p, space)
        devs[f"nu={nu}"] = float(np.max(np.abs(
            (X1.matrix - mv.matrix)[1:-1, :])))
        reports["reports"].append(residual_report(
            "recursion_seed_vs_mapped_velocity", grid, p, devs[f"nu={nu}"],
            tol))
    for sign in ("minus", "plus"):
        pc = continue_to_imaginary(diffusion_params("nu", 0.5), sign)
        space = build_space(grid, "L2")
        Hc = hamiltonian(None, pc, V, space)
        Xc = position_operator(space)
        X1 = time_derivative_recursion(Xc, Hc, pc, 1)[0]
        mv = mapped_velocity_operator(pc, space)
        devs[sign] = float(np.max(np.abs((X1.matrix - mv.matrix)[1:-1, :])))
        reports["reports"].append(residual_report(
            "recursion_seed_vs_mapped_velocity", grid, pc, devs[sign], tol,
            notes=f"continued branch {sign}; kinetic sign fixed by "
                  "recursion consistency"))
    worst = float(max(devs.values()))
    return [ctx.record(
        "recursion_velocity", "hamiltonian-recursion", _status(worst, tol),
        measured=devs,
        reference={"identity": "[H, X] / (2 m nu) = 2 nu d/dx on interior rows"},
        tolerance=tol, oracle="exact matrix identity on a dyadic grid")]


def check_acceleration_identity(ctx: CheckContext):
    tol = ctx.tol("acceleration_identity", 5e-3)
    ratio_min = 3.5
    floor = 1e-3
    results = {}
    worst = 0.0
    worst_ratio = np.inf
    for nu in (0.5, 1.0):
        p = diffusion_params("nu", nu)
        gaps = {}
        for n in (801, 1601):
            grid = Grid1D(-8.0, 8.0, n)
            ws = ctx.ho_ground(grid)
            V = 0.5 * grid.x ** 2
            acc = acceleration_function(ws, p, V, compare_floor=floor)
            gaps[n] = acc.max_gap()
        results[f"gap_dx=0.02_nu={nu}"] = gaps[801]
        ratio = gaps[801] / gaps[1601]
        results[f"refinement_ratio_nu={nu}"] = ratio
        worst = max(worst, gaps[801])
        worst_ratio = min(worst_ratio, ratio)
    # closed-form spot value at nu = 0.5: acceleration(x) = x
    grid = Grid1D(-8.0, 8.0, 801)
    ws = ctx.ho_ground(grid)
    acc = acceleration_function(ws, diffusion_params("nu", 0.5),
                                0.5 * grid.x ** 2, compare_floor=floor)
    i = int(np.argmin(np.abs(grid.x - 1.0)))
    spot = abs(acc.from_drift[i] - 1.0)
    results["spot_|a(1)-1|_nu=0.5"] = spot
    ok = worst < tol and worst_ratio >= ratio_min and spot < 1e-8
    return [ctx.record(
        "acceleration_identity", "acceleration-forms",
        PASS if ok else FAIL, measured=results,
        reference={"gap": f"< {tol} at dx=0.02 on the rho > 1e-3*max mask",
                   "ratio": ">= 3.5 (O(dx^2))", "a(1)": "1 at nu=0.5"},
        tolerance=tol,
        oracle="symbolic evaluation: both forms reduce to x for the "
               "ground state at nu = 1/2",
        notes=f"comparison mask floor {floor:g} (relative); tails excluded "
              "because d2/dx2 of log-density amplifies truncation error")]


def check_hamiltonian_spectrum(ctx: CheckContext):
    tol = ctx.tol("hamiltonian_spectrum", 1e-4)
    grid = ctx.grid
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    space = build_space(grid, "L2")
    H = hamiltonian(None, pc, 0.5 * grid.x ** 2, space)
    lam = np.linalg.eigvalsh(H.matrix[1:-1, 1:-1].real)
    err0 = abs(lam[0] - 0.5)
    err1 = abs(lam[1] - 1.5)
    return [ctx.record(
        "hamiltonian_spectrum", "hamiltonian-recursion",
        _status(max(err0, err1), tol),
        measured={"lowest_eigenvalue": float(lam[0]),
                  "second_eigenvalue": float(lam[1])},
        reference={"spectrum": "(n + 1/2) hbar omega"}, tolerance=tol,
        oracle="textbook oscillator spectrum")]


def check_heisenberg_taylor(ctx: CheckContext):
    """Order-10 Taylor vs exact conjugation, on spectrally resolved grids.

    The order-k truncation of exp(i ad_H s) tracks the exponential only
    while |s| * (spectral diameter of H) stays below ~k; on a fine grid
    the kinetic eigenvalues ~ 1/dx^2 put the high end of the ad-spectrum
    far beyond any fixed order (measured gap ~ 1e10 at dx = 0.02), so the
    comparison is made where it is mathematically meaningful, on grids
    whose full spectrum is order-resolvable at s = 0.1.
    """
    tol = ctx.tol("heisenberg_taylor", 1e-8)
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    devs = {}
    for n in (25, 31):
        grid = Grid1D(-6.0, 6.0, n)
        space = build_space(grid, "L2")
        H = hamiltonian(None, pc, 0.5 * grid.x ** 2, space)
        X = position_operator(space)
        T10 = taylor_heisenberg(X, H, 0.1, 10, pc)
        E = heisenberg_operator(X, H, 0.1, pc)
        devs[f"n={n}"] = float(np.max(np.abs(T10.matrix - E.matrix)))
        if n == 25:
            z = taylor_heisenberg(X, H, 0.0, 0, pc)
            devs["order0_is_X"] = float(np.max(np.abs(z.matrix - X.matrix)))
            e0 = heisenberg_operator(X, H, 0.0, pc)
            devs["s=0_is_X"] = float(np.max(np.abs(e0.matrix - X.matrix)))
    worst = float(max(devs.values()))
    return [ctx.record(
        "heisenberg_taylor", "taylor-evolution", _status(worst, tol),
        measured=devs,
        reference={"gap": "< 1e-8 at order 10, s = 0.1"},
        tolerance=tol, oracle="exact conjugation by eigendecomposition",
        notes="grids chosen so the full spectral diameter is resolvable "
              "at order 10; see docstring for the fine-grid obstruction")]


def _smooth_test_states(grid: Grid1D):
    """Normalized Gaussian packets spanning the trapped phase space."""
    out = []
    for x0, k0 in ((0.0, 0.0), (-1.5, 0.0), (1.0, 1.0), (0.5, -2.0),
                   (-0.5, 1.5), (1.5, 0.5)):
        psi = np.exp(-(grid.x - x0) ** 2 / 2.0) * np.exp(1j * k0 * grid.x)
        psi /= np.sqrt(np.sum(np.abs(psi) ** 2) * grid.dx)
        out.append(psi)
    return out


def check_heisenberg_closed_form(ctx: CheckContext):
    """X(s) vs X cos(s) + P sin(s) for the oscillator, in action on states.

    Raw entrywise comparison of the two matrices is not a convergent
    statement (the momentum kernel is a discretized derivative of a delta
    function, and box states above the wall height do not follow the
    oscillator closure), so the gap is measured in action on normalized
    smooth packets supported away from the walls, where it is O(dx^2).
    """
    tol = ctx.tol("heisenberg_closed_form", 5e-3)
    grid = Grid1D(-8.0, 8.0, 801)
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    space = build_space(grid, "L2")
    H = hamiltonian(None, pc, 0.5 * grid.x ** 2, space)
    X = position_operator(space)
    P = momentum_operator(pc, space)
    devs = {}
    for s in (0.1, 1.0):
        Xs = heisenberg_operator(X, H, s, pc)
        model = X.matrix * np.cos(s) + P.matrix * np.sin(s)
        gap = 0.0
        for psi in _smooth_test_states(grid):
            gap = max(gap, float(np.max(np.abs((Xs.matrix - model) @ psi))))
        devs[f"s={s}"] = gap
    worst = float(max(devs.values()))
    return [ctx.record(
        "heisenberg_closed_form", "exponential-evolution",
        _status(worst, tol), measured=devs,
        reference={"identity": "X(s) = X cos s + P sin s in action on "
                               "trapped smooth states"},
        tolerance=tol, oracle="oscillator ladder closed form",
        notes="measured in action on 6 normalized Gaussian packets; raw "
              "entrywise max-norm is dominated by wall states and the "
              "delta-prime kernel of P (O(10) at any dx)")]


def check_recursion_closed_forms(ctx: CheckContext):
    tol = ctx.tol("recursion_closed_forms", 5e-3)
    grid = Grid1D(-8.0, 8.0, 801)
    pc = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    space = build_space(grid, "L2")
    states = _smooth_test_states(grid)
    devs = {}
    # free particle: X^1 = P/m, X^2 = 0
    H0 = hamiltonian(None, pc, np.zeros(grid.n), space)
    X = position_operator(space)
    X1, X2 = time_derivative_recursion(X, H0, pc, 2)
    P = momentum_operator(pc, space)
    devs["free_X1_vs_P/m"] = float(np.max(np.abs(
        (X1.matrix - P.matrix / pc.m)[1:-1, :])))
    devs["free_X2"] = max(float(np.max(np.abs(X2.matrix @ psi)))
                          for psi in states)
    # oscillator: X^2 = -X in action
    Hh = hamiltonian(None, pc, 0.5 * grid.x ** 2, space)
    _, X2h = time_derivative_recursion(X, Hh, pc, 2)
    devs["ho_X2_plus_X"] = max(
        float(np.max(np.abs((X2h.matrix + X.matrix) @ psi)))
        for psi in states)
    # real mode, ground state: X^2 = multiplication by the acceleration field
    p = diffusion_params("nu", 0.5)
    ws = ctx.ho_ground(grid)
    Ht = build_space(grid, "H_t", ws.rho(0))
    Hr = hamiltonian(ws, p, 0.5 * grid.x ** 2, Ht)
    Xr = position_operator(Ht)
    _, X2r = time_derivative_recursion(Xr, Hr, p, 2)
    acc = acceleration_function(ws, p, 0.5 * grid.x ** 2, compare_floor=1e-3)
    mult = np.where(acc.mask, acc.from_drift, 0.0)
    gap = 0.0
    for psi in states:
        lhs = (X2r.matrix @ psi)[acc.mask]
        rhs = (mult * psi)[acc.mask]
        gap = max(gap, float(np.max(np.abs(lhs - rhs))))
    devs["real_X2_vs_acceleration"] = gap
    worst = float(max(devs.values()))
    return [ctx.record(
        "recursion_closed_forms", "hamiltonian-recursion",
        _status(worst, tol), measured=devs,
        reference={"free": "X^2 = 0", "oscillator": "X^2 = -X",
                   "real ground state": "X^2 = multiplication by the "
                                        "acceleration field"},
        tolerance=tol, oracle="commutator closed forms, in action on "
                              "smooth trapped states")]


def check_equal_time_value(ctx: CheckContext):
    tol = ctx.tol("equal_time_value", 1e-6)
    grid = ctx.grid
    ws = ctx.ho_ground(grid)
    devs = {}
    for nu in (0.5, 1.0, 2.0):
        space = build_space(grid, "L2")
        theta = space.normalize(np.exp(ws.R[0]))
        X = position_operator(space)
        val = correlation(theta, [X, X], space)
        devs[f"real_nu={nu}"] = abs(val - 0.5)
    for sign in ("minus", "plus"):
        pc = continue_to_imaginary(diffusion_params("nu", 0.5), sign)
        space = build_space(grid, "L2")
        psi = space.normalize(np.exp(ws.R[0] + 1j * np.where(
            np.isnan(ws.S[0]), 0.0, ws.S[0])))
        X = position_operator(space)
        val = correlation(psi, [X, X], space)
        devs[f"continued_{sign}"] = abs(val - 0.5)
        devs[f"imag_{sign}"] = abs(correlation(psi, [X, X], space).imag)
    worst = float(max(devs.values()))
    return [ctx.record(
        "equal_time_value", "measurable-statistics", _status(worst, tol),
        measured=devs,
        reference={"value": 0.5, "property": "real and identical across all "
                                             "family members and branches"},
        tolerance=tol, oracle="stationary variance hbar/2 m omega")]


def check_continued_two_time(ctx: CheckContext):
    tol = ctx.tol("continued_two_time", 5e-3)
    grid = ctx.grid
    ws = ctx.ho_ground(grid)
    V = 0.5 * grid.x ** 2
    pm = continue_to_imaginary(diffusion_params("nu", 0.5), "minus")
    pp = continue_to_imaginary(diffusion_params("nu", 0.5), "plus")
    devs = {}
    curve = []
    for s in (0.25, 0.5, 1.0):
        cm = two_time_position_correlation(ws, pm, s, V)
        ref = 0.5 * np.exp(-1j * s)
        devs[f"s={s}"] = abs(cm - ref)
        cp = two_time_position_correlation(ws, pp, s, V)
        devs[f"branch_conjugacy_s={s}"] = abs(cp - np.conj(cm))
        curve.append((s, cm))
    worst = float(max(devs.values()))
    ctx.artifacts["continued_two_time_curve"] = {
        "kind": "correlation_curve",
        "columns": ["s", "matrix_element_re", "matrix_element_im",
                    "reference_re", "reference_im"],
        "rows": [[s, c.real, c.imag, (0.5 * np.exp(-1j * s)).real,
                  (0.5 * np.exp(-1j * s)).imag] for s, c in curve],
    }
    return [ctx.record(
        "continued_two_time", "path-correlation-formula",
        _status(worst, tol), measured=devs,
        reference={"value": "0.5 exp(-i s) on the minus branch; branches "
                            "are complex conjugates"},
        tolerance=tol, oracle="oscillator ladder two-point function")]


# --------------------------------------------------------------------------
# full: Monte Carlo
# --------------------------------------------------------------------------

def _pooled_qvar(ctx, nu, dt, n_steps, j_lo, j_hi):
    e = ctx.ou_ensemble(nu, dt, n_steps)
    num = 0.0
    den = 0
    for j in range(j_lo, j_hi):
        tab = estimate_quadratic_variation(e, j, bins=32)
        use = tab.counts >= MIN_ASSERT_COUNT
        num += float(np.sum(tab.estimate[use] * tab.counts[use]))
        den += int(tab.counts[use].sum())
    return (num / den if den else np.nan), den


def check_qvar_recovery(ctx: CheckContext):
    tol = ctx.tol("qvar_recovery", 0.02)
    tol_rich = ctx.tol("qvar_richardson", 0.005)
    devs = {}
    inconclusive = False
    for nu in (0.5, 1.0):
        est1, n1 = _pooled_qvar(ctx, nu, 1e-3, 40, 5, 35)
        est2, n2 = _pooled_qvar(ctx, nu, 5e-4, 80, 10, 70)
        if not n1 or not n2:
            inconclusive = True
            continue
        rel1 = abs(est1 - 2 * nu) / (2 * nu)
        extrap = 2 * est2 - est1
        rel_r = abs(extrap - 2 * nu) / (2 * nu)
        devs[f"estimate_nu={nu}"] = est1
        devs[f"relative_error_nu={nu}"] = rel1
        devs[f"richardson_nu={nu}"] = extrap
        devs[f"richardson_rel_error_nu={nu}"] = rel_r
    if inconclusive:
        return [ctx.record("qvar_recovery", "quadratic-variation",
                           INCONCLUSIVE, notes="insufficient occupancy")]
    worst = max(v for k, v in devs.items() if k.startswith("relative"))
    worst_r = max(v for k, v in devs.items() if k.startswith("richardson_rel"))
    ok = worst < tol and worst_r < tol_rich
    return [ctx.record(
        "qvar_recovery", "quadratic-variation", PASS if ok else FAIL,
        measured=devs, reference={"value": "2 nu",
                                  "richardson": "O(dt) bias removed"},
        tolerance=tol, oracle="defining variance of the noise; "
                              "step-halving extrapolation",
        notes=f"occupancy-weighted over usable bins (>= {MIN_ASSERT_COUNT})")]


def check_drift_recovery(ctx: CheckContext):
    """Binned forward/backward drift estimates vs the generating fields."""
    nu = 0.5
    dt = 0.01
    e = ctx.ou_ensemble(nu, dt, 40)
    edges = np.arange(-3.4, 3.401, 0.4)
    slices = (10, 20, 30)
    fwd_sum = np.zeros(edges.size - 1)
    bwd_sum = np.zeros_like(fwd_sum)
    wsum = np.zeros_like(fwd_sum)
    var_f = np.zeros_like(fwd_sum)
    var_b = np.zeros_like(fwd_sum)
    counts = np.zeros(edges.size - 1, dtype=int)
    hists = np.zeros_like(fwd_sum)
    for j in slices:
        f = estimate_forward_drift(e, j, bins=edges, min_count=MIN_ASSERT_COUNT)
        b = estimate_backward_drift(e, j, bins=edges, min_count=MIN_ASSERT_COUNT)
        use = f.usable & b.usable
        fwd_sum[use] += f.estimate[use] * f.counts[use]
        bwd_sum[use] += b.estimate[use] * b.counts[use]
        var_f[use] += (f.std_error[use] * f.counts[use]) ** 2
        var_b[use] += (b.std_error[use] * b.counts[use]) ** 2
        wsum[use] += f.counts[use]
        counts += f.counts
        _, dens, _ = density_histogram(e, j, bins=edges)
        hists += dens / len(slices)
    use = wsum > 0
    centers = 0.5 * (edges[:-1] + edges[1:])
    fwd = fwd_sum[use] / wsum[use]
    bwd = bwd_sum[use] / wsum[use]
    se_f = np.sqrt(var_f[use]) / wsum[use]
    se_b = np.sqrt(var_b[use]) / wsum[use]
    x = centers[use]
    dev_f = np.abs(fwd - (-2 * nu * x)) / (3 * se_f)
    dev_b = np.abs(bwd - (+2 * nu * x)) / (3 * se_b)
    # estimator-level osmotic identity: (b - b*)/2 vs nu * d ln(rho-hat)/dx
    ln_rho = np.log(np.maximum(hists, 1e-300))
    dln = np.gradient(ln_rho, centers)
    se_ln = 1.0 / np.sqrt(np.maximum(counts, 1))
    se_dln = np.sqrt(se_ln[2:] ** 2 + se_ln[:-2] ** 2)[use[1:-1]] / (
        2 * (centers[1] - centers[0]))
    half = (fwd - bwd) / 2
    inner = use & np.concatenate(([False], np.ones(use.size - 2, bool), [False]))
    hsel = inner[use]
    osm_gap = np.abs(half[hsel] - nu * dln[inner])
    osm_se = np.sqrt((se_f[hsel] ** 2 + se_b[hsel] ** 2) / 4
                     + (nu * se_dln) ** 2)
    dev_o = osm_gap / (3 * osm_se)
    if use.sum() < 3:
        return [ctx.record("drift_recovery", "drift-definition", INCONCLUSIVE,
                           notes="insufficient occupancy")]
    measured = {
        "usable_bins": int(use.sum()),
        "max_forward_dev_over_3se": float(dev_f.max()),
        "max_backward_dev_over_3se": float(dev_b.max()),
        "max_osmotic_dev_over_3se": float(dev_o.max()),
    }
    ctx.artifacts["drift_recovery_table"] = {
        "kind": "drift_compare",
        "columns": ["bin_center", "forward_est", "forward_ref",
                    "backward_est", "backward_ref", "se_forward",
                    "se_backward"],
        "rows": [[float(x[i]), float(fwd[i]), float(-2 * nu * x[i]),
                  float(bwd[i]), float(2 * nu * x[i]), float(se_f[i]),
                  float(se_b[i])] for i in range(x.size)],
    }
    ok = max(dev_f.max(), dev_b.max(), dev_o.max()) < 1.0
    return [ctx.record(
        "drift_recovery", "drift-definition", PASS if ok else FAIL,
        measured=measured,
        reference={"forward": "-2 nu x", "backward": "+2 nu x",
                   "osmotic": "nu d ln rho / dx"},
        tolerance=1.0, oracle="generating fields; histogram log-derivative",
        notes="deviations in units of 3 standard errors; bins with >= "
              f"{MIN_ASSERT_COUNT} samples, pooled over 3 time slices")]


def check_initial_sampling(ctx: CheckContext):
    grid = ctx.grid
    rho0 = ho_ground_density(grid.x)
    n = ctx.cfg.sde.n_paths
    x = sample_initial(rho0, grid, n, ctx.cfg.sde.seed)
    se_mean = np.sqrt(0.5 / n)
    se_var = 0.5 * np.sqrt(2.0 / (n - 1))
    dev_mean = abs(float(x.mean())) / (3 * se_mean)
    dev_var = abs(float(x.var()) - 0.5) / (3 * se_var)
    empty = sample_initial(rho0, grid, 0, 1).size == 0
    spike = np.zeros(grid.n)
    i0 = grid.n // 3
    spike[i0] = 1.0
    spike /= grid.trapezoid(spike)
    xs = sample_initial(spike, grid, 1000, 3)
    in_support = bool(np.all(np.abs(xs - grid.x[i0]) <= grid.dx))
    ok = dev_mean < 1 and dev_var < 1 and empty and in_support
    return [ctx.record(
        "initial_sampling", "initial-law", PASS if ok else FAIL,
        measured={"mean_dev_over_3se": dev_mean, "var_dev_over_3se": dev_var,
                  "empty_ok": empty, "spike_support_ok": in_support},
        reference={"mean": 0.0, "variance": 0.5},
        tolerance=1.0, std_error=se_var,
        oracle="standard-error bounds for Gaussian sampling")]


def check_determinism(ctx: CheckContext):
    grid = ctx.grid
    p = diffusion_params("nu", 0.5)
    df = ctx.ou_drift(0.5)
    x0 = sample_initial(ho_ground_density(grid.x), grid, 2000, 9)
    e1 = simulate_ensemble(df, x0, p, 1e-3, 25, seed=9, n_workers=1)
    e8 = simulate_ensemble(df, x0, p, 1e-3, 25, seed=9, n_workers=8)
    e1b = simulate_ensemble(df, x0, p, 1e-3, 25, seed=9, n_workers=3)
    identical = bool(np.array_equal(e1.paths, e8.paths)
                     and np.array_equal(e1.paths, e1b.paths))
    return [ctx.record(
        "determinism", "reproducible-sampling", PASS if identical else FAIL,
        measured={"bit_identical_1_vs_8_vs_3_workers": identical},
        reference={"contract": "bit-identical for any worker partition"},
        oracle="array equality")]


def check_stationary_variance(ctx: CheckContext):
    """Equal-time histogram variance is 0.5 for every real family member.

    One record per member plus a pairwise-consistency record.
    """
    n = ctx.cfg.sde.n_paths
    if n < 1000:
        return [ctx.record("stationary_variance", "measurable-statistics",
                           INCONCLUSIVE, notes="insufficient paths")]
    se = 0.5 * np.sqrt(2.0 / (n - 1))
    records = []
    values = {}
    for nu in (0.5, 1.0, 2.0):
        e = ctx.ou_ensemble(nu, 1e-3, 40)
        v = float(e.positions(e.n_steps).var())
        values[nu] = v
        dev = abs(v - 0.5) / (3 * se)
        records.append(ctx.record(
            f"stationary_variance[nu={nu}]", "measurable-statistics",
            PASS if dev < 1 else FAIL,
            measured={"nu": nu, "variance": v, "dev_over_3se": dev,
                      "max_dev_over_3se": dev},
            reference={"variance": 0.5}, tolerance=1.0, std_error=se,
            oracle="stationary variance hbar / 2 m omega = nu / gamma"))
    pair = max(abs(values[0.5] - values[1.0]),
               abs(values[1.0] - values[2.0]),
               abs(values[0.5] - values[2.0])) / (3 * np.sqrt(2) * se)
    records.append(ctx.record(
        "stationary_variance[pairwise]", "measurable-statistics",
        PASS if pair < 1 else FAIL,
        measured={"pairwise_dev_over_3se": float(pair)},
        reference={"property": "identical across the family"},
        tolerance=1.0, std_error=se * np.sqrt(2),
        oracle="pairwise differences of the member variances"))
    return records


def check_density_histogram_match(ctx: CheckContext):
    tol = ctx.tol("density_histogram_match", 0.02)
    grid = ctx.grid
    edges = np.arange(-4.0, 4.001, 0.2)
    devs = {}
    for nu in (0.5, 1.0, 2.0):
        e = ctx.ou_ensemble(nu, 5e-3, 2000, store_every=100)  # to t = 10
        _, dens, _ = density_histogram(e, e.n_steps, bins=edges)
        devs[f"L1_nu={nu}"] = histogram_l1_distance(
            edges, dens, lambda x: ho_ground_density(x))
    e05 = ctx.ou_ensemble(0.5, 5e-3, 2000, store_every=100)
    ctx.artifacts["density_histogram_nu0.5"] = {
        "kind": "density_compare",
        "columns": ["bin_center", "histogram", "reference"],
        "rows": [[float(c), float(d), float(r)] for c, d, r in zip(
            0.5 * (edges[:-1] + edges[1:]),
            density_histogram(e05, e05.n_steps, bins=edges)[1],
            ho_ground_density(0.5 * (edges[:-1] + edges[1:])))],
    }
    # spreading packet: histogram variance follows the free-packet law
    oracle_times = np.linspace(0.0, 1.0, 51)
    gf = Grid1D(-16.0, 16.0, 1601)
    wsf = analytic_oracle("free_gaussian", {"sigma0": 1.0}, gf, oracle_times)
    p = diffusion_params("nu", 0.5)
    dff = drift_fields(wsf, p)
    x0 = sample_initial(np.abs(wsf.psi[0]) ** 2, gf, ctx.cfg.sde.n_paths,
                        ctx.cfg.sde.seed + 1)
    ef = simulate_ensemble(dff, x0, p, 2e-3, 500, ctx.cfg.sde.seed + 1,
                           store_every=100)
    vhat = float(ef.positions(ef.n_steps).var())
    vref = free_gaussian_variance(1.0, 1.0)
    se_v = vref * np.sqrt(2.0 / ef.n_paths)
    devs["free_packet_var_dev_over_3se"] = abs(vhat - vref) / (3 * se_v)
    worst_l1 = max(v for k, v in devs.items() if k.startswith("L1"))
    ok = worst_l1 < tol and devs["free_packet_var_dev_over_3se"] < 1
    return [ctx.record(
        "density_histogram_match", "density-law", PASS if ok else FAIL,
        measured=devs,
        reference={"L1": f"< {tol} vs exp(2R) at t = 10 for each nu",
                   "free_packet": "variance follows the spreading law"},
        tolerance=tol, oracle="ground-state density; spreading law",
        notes="same-law hold at every nu is the measurable-statistics check")]


def check_fk_bridge_real(ctx: CheckContext):
    """Monte Carlo two-time product vs the semigroup matrix element."""
    tol = ctx.tol("fk_bridge_real", 0.02)
    nu = 0.5
    dt = 2e-3
    stride = 25                      # stored spacing 0.05
    e = ctx.ou_ensemble(nu, dt, 1450, store_every=stride)
    dt_stored = dt * stride
    grid = ctx.grid
    ws = ctx.ho_ground(grid)
    p = diffusion_params("nu", nu)
    base_idx = [int(round(t / dt_stored)) for t in np.arange(0.5, 1.91, 0.1)]
    rows = []
    devs = {}
    for s in (0.25, 0.5, 1.0):
        lag = int(round(s / dt_stored))
        prods = np.concatenate([
            e.positions(j) * e.positions(j + lag) for j in base_idx])
        mc = float(prods.mean())
        se = float(prods.std() / np.sqrt(e.n_paths))  # pooled slices overlap
        mat = two_time_position_correlation(ws, p, s).real
        rel = abs(mc - mat) / abs(mat)
        devs[f"mc_s={s}"] = mc
        devs[f"matrix_s={s}"] = mat
        devs[f"rel_gap_s={s}"] = rel
        rows.append([s, mc, se, mat, 0.0])
    ctx.artifacts["fk_bridge_curve"] = {
        "kind": "correlation_curve",
        "columns": ["s", "mc_estimate", "mc_stderr", "matrix_element_re",
                    "matrix_element_im"],
        "rows": rows,
    }
    worst = max(v for k, v in devs.items() if k.startswith("rel"))
    return [ctx.record(
        "fk_bridge_real", "path-correlation-formula",
        _status(worst, tol), measured=devs,
        reference={"autocovariance": "0.5 exp(-2 nu s)"},
        tolerance=tol,
        oracle="path average pooled over 15 stationary base times vs the "
               "stationary-semigroup matrix element",
        notes="matrix element equals the exact autocovariance to O(dx^2)")]


def _coherent_mean_curve(ctx, nu, dt, n_total, n_paths, seed, keep_steps):
    """Streaming simulation keeping only snapshot rows and the mean curve."""
    grid = ctx.grid
    times = np.linspace(0.0, (n_total + 1) * dt, 80)
    ws = analytic_oracle("ho_coherent", {"x0": 1.0}, grid, times)
    p = diffusion_params("nu", nu)
    df = drift_fields(ws, p)
    x = sample_initial(np.abs(ws.psi[0]) ** 2, grid, n_paths, seed)
    x = reflect(x, grid.x_min, grid.x_max)
    sigma = np.sqrt(2 * nu * dt)
    means = np.empty(n_total + 1)
    means[0] = x.mean()
    kept = {}
    if 0 in keep_steps:
        kept[0] = x.copy()
    for j in range(n_total):
        z = srng.step_normals(seed, j, n_paths)
        x = x + df.b_at(j * dt, x) * dt + sigma * z
        x = reflect(x, grid.x_min, grid.x_max)
        means[j + 1] = x.mean()
        if (j + 1) in keep_steps:
            kept[j + 1] = x.copy()
    return means, kept


def check_mean_acceleration_packet(ctx: CheckContext):
    """Packet-mean acceleration: second difference of the mean position.

    The osmotic divergence of the naive binned estimator integrates to
    zero in the unconditional average, so the second difference of the
    ensemble-mean trajectory cleanly measures the mean acceleration of
    the packet, which for the displaced oscillator state at nu = hbar/2m
    is minus the packet center.
    """
    tol = ctx.tol("mean_acceleration_packet", 0.05)
    if ctx.cfg.sde.n_paths < 50_000:
        return [ctx.record("mean_acceleration_packet", "mean-acceleration",
                           INCONCLUSIVE, notes="insufficient paths")]
    dt = 0.01
    stride = 45       # tau = 0.45: variance-bias compromise, see notes
    n_paths = max(ctx.cfg.sde.n_paths, 200_000)
    t_probe = [int(round(t / dt)) for t in (1.0, 2.0, 3.14, 4.2, 5.3, 6.28)]
    n_total = max(t_probe) + stride
    means, _ = _coherent_mean_curve(ctx, 0.5, dt, n_total, n_paths,
                                    ctx.cfg.sde.seed + 2, keep_steps=())
    tau = stride * dt
    c1 = 2 * (1 - np.cos(tau)) / tau ** 2   # finite-stride factor on cos
    devs = {}
    worst = 0.0
    for j0 in t_probe:
        t = j0 * dt
        xbar = np.cos(t)
        if abs(xbar) < 0.4:
            continue
        acc = (means[j0 + stride] - 2 * means[j0] + means[j0 - stride]) / tau ** 2
        rel = abs(acc / c1 - (-xbar)) / abs(xbar)
        devs[f"t={t:.2f}"] = rel
        devs[f"raw_t={t:.2f}"] = abs(acc - (-xbar)) / abs(xbar)
        worst = max(worst, rel)
    se_note = (f"stride tau = {tau:g} trades the 4 nu / tau^3 estimator "
               f"variance against the finite-stride factor "
               f"2(1-cos tau)/tau^2 = {c1:.4f} (divided out); "
               f"n_paths = {n_paths}")
    return [ctx.record(
        "mean_acceleration_packet", "mean-acceleration",
        _status(worst, tol), measured=devs,
        reference={"packet": "d2<x>/dt2 = -<x> for the displaced oscillator "
                             "state at nu = hbar/2m"},
        tolerance=tol, oracle="classical center motion x0 cos(t)",
        notes=se_note)]


def check_mean_acceleration_binned_literal(ctx: CheckContext):
    """Literal binned symmetric-difference acceleration vs -x.

    Unattainable: conditioned on the middle position, the expectation of
    the symmetric second difference is (b - b*)/dt + O(1) -- the osmotic
    term diverges as dt -> 0 wherever the density has a gradient (for the
    displaced ground-state packet it is -2 (x - center)/dt, i.e. ~ -200
    (x - center) at dt = 0.01, against a target of -x), and the
    per-sample variance grows like 4 nu / dt^3.  The packet-mean check
    next to this one is the convergent unconditional form.
    """
    tol = ctx.tol("mean_acceleration_binned", 0.05)
    dt = 0.01
    n_paths = ctx.cfg.sde.n_paths
    j0 = 100
    means, kept = _coherent_mean_curve(ctx, 0.5, dt, j0 + 1, n_paths,
                                       ctx.cfg.sde.seed + 3,
                                       keep_steps=(j0 - 1, j0, j0 + 1))
    paths = np.stack([kept[j0 - 1], kept[j0], kept[j0 + 1]], axis=1)
    e = Ensemble(paths=paths, dt=dt, t0=(j0 - 1) * dt,
                 seed=ctx.cfg.sde.seed + 3,
                 params=diffusion_params("nu", 0.5),
                 provenance="coherent packet window", x_min=ctx.grid.x_min,
                 x_max=ctx.grid.x_max)
    tab = estimate_mean_acceleration(e, 1, bins=np.arange(-3.0, 3.01, 0.25),
                                     min_count=MIN_ASSERT_COUNT)
    use = tab.usable
    if use.sum() < 3:
        return [ctx.record("mean_acceleration_binned_literal",
                           "mean-acceleration", INCONCLUSIVE,
                           known_unattainable=True,
                           notes="insufficient occupancy")]
    centers = tab.centers[use]
    est = tab.estimate[use]
    rel = np.abs(est - (-centers)) / np.maximum(np.abs(centers), 0.4)
    worst = float(np.max(rel))
    xbar = float(np.cos(j0 * dt))
    pred = -(2.0 / dt) * (centers - xbar) + 0.0 * centers
    return [ctx.record(
        "mean_acceleration_binned_literal", "mean-acceleration",
        _status(worst, tol), known_unattainable=True,
        measured={"max_relative_dev": worst,
                  "sample_bin_values": {f"x={c:.2f}": float(v)
                                        for c, v in zip(centers[:6], est[:6])},
                  "divergent_term_prediction": {f"x={c:.2f}": float(v)
                                                for c, v in
                                                zip(centers[:6], pred[:6])}},
        reference={"stated": "-x within 5% in occupied central bins"},
        tolerance=tol, oracle="n/a (see notes)",
        notes="the conditional second difference measures (b - b*)/dt + "
              "O(1), which diverges as dt -> 0; measured bin values track "
              "the -2(x - center)/dt prediction, not -x; the convergent "
              "unconditional form passes (mean_acceleration_packet)")]


def check_fp_schrodinger_consistency(ctx: CheckContext):
    """Coherent-state density: forward-equation evolution vs exp(2R)."""
    tol = ctx.tol("fp_schrodinger_consistency", 1e-3)
    grid = Grid1D(-8.0, 8.0, 1601)
    nu = 0.5
    p = diffusion_params("nu", nu)
    wc = analytic_oracle("ho_coherent", {"x0": 1.0}, grid, [0.0])
    V = 0.5 * grid.x ** 2
    dt = 1e-3
    period = 2 * np.pi
    n_steps = int(round(period / dt))
    n_steps -= n_steps % 40           # align snapshots and checkpoints
    sol = solve_schrodinger(V, wc.psi[0], grid, dt, n_steps, store_every=10)
    df = drift_fields(sol, p)
    rho0 = np.exp(2 * sol.R[0])
    rho0 /= grid.trapezoid(rho0)
    ev = evolve_density_fokker_planck(df, rho0, dt, n_steps,
                                      store_every=n_steps // 4)
    devs = {}
    for kq, jq in enumerate(range(n_steps // 4, n_steps + 1, n_steps // 4),
                            start=1):
        ref = np.exp(2 * sol.R[jq // 10])
        ref /= grid.trapezoid(ref)
        devs[f"L1_quarter_{kq}"] = l1_distance(grid, ev.rho[kq], ref)
    worst = float(max(devs.values()))
    ctx.artifacts["fp_density_movie"] = {
        "kind": "density_movie",
        "grid": grid,
        "times": ev.times,
        "rho": ev.rho,
    }
    return [ctx.record(
        "fp_schrodinger_consistency", "forward-equation",
        _status(worst, tol), measured=devs,
        reference={"L1": f"< {tol} over one period"},
        tolerance=tol,
        oracle="wave-equation density exp(2R(t)) from the implicit solver",
        notes=f"{n_steps} steps at dt = {dt}, drift interpolated between "
              "snapshots every 10 steps")]


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

FAST_CHECKS = {
    "family_parameterization": check_family_parameterization,
    "wave_decomposition": check_wave_decomposition,
    "schrodinger_stationary": check_schrodinger_stationary,
    "free_packet_spreading": check_free_packet_spreading,
    "drift_closed_forms": check_drift_closed_forms,
    "fokker_planck_forward": check_fokker_planck_forward,
    "commutator_exact": check_commutator_exact,
    "commutator_pointwise_literal": check_commutator_pointwise_literal,
    "canonical_algebra": check_canonical_algebra,
    "canonical_pointwise_literal": check_canonical_pointwise_literal,
    "tmap_unitarity": check_tmap_unitarity,
    "recursion_velocity": check_recursion_velocity,
    "acceleration_identity": check_acceleration_identity,
    "hamiltonian_spectrum": check_hamiltonian_spectrum,
    "heisenberg_taylor": check_heisenberg_taylor,
    "heisenberg_closed_form": check_heisenberg_closed_form,
    "recursion_closed_forms": check_recursion_closed_forms,
    "equal_time_value": check_equal_time_value,
    "continued_two_time": check_continued_two_time,
}

FULL_CHECKS = {
    **FAST_CHECKS,
    "qvar_recovery": check_qvar_recovery,
    "drift_recovery": check_drift_recovery,
    "initial_sampling": check_initial_sampling,
    "determinism": check_determinism,
    "stationary_variance": check_stationary_variance,
    "density_histogram_match": check_density_histogram_match,
    "fk_bridge_real": check_fk_bridge_real,
    "mean_acceleration_packet": check_mean_acceleration_packet,
    "mean_acceleration_binned_literal": check_mean_acceleration_binned_literal,
    "fp_schrodinger_consistency": check_fp_schrodinger_consistency,
}

ALL_CHECKS = FULL_CHECKS
