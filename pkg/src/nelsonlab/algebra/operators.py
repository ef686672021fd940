"""Dense operator matrices on a grid: position, velocities, Hamiltonian.

All differential operator matrices carry the hard-wall closure: exact
centered stencils on interior rows, zero entries in the boundary rows and
columns (states vanish at the walls, so boundary values neither evolve
nor feed back).  Identity assertions are made on interior rows; repeated
commutators additionally develop finite-section artifacts in an
``O(order)``-node corner layer, which tests exclude.

A note on the discrete commutation rules.  With ``X = diag(x)`` and the
centered derivative ``D``, the product rule on a uniform grid gives

    ([D, X] f)_i = (f_{i-1} + f_{i+1}) / 2        (interior rows),

i.e. ``[D, X] = A``, the nearest-neighbor averaging operator -- the
second-order-accurate discrete representation of the identity, equal to
``1 + (dx^2/2) Lap`` on smooth fields.  No finite matrix pair can achieve
``[D, X] = 1`` exactly (the diagonal of any commutator with a diagonal X
vanishes entrywise), so the commutator identities below are exact *as
matrix identities against A*, and second-order against the plain identity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyMaskError, InputError, UnsupportedConfigError
from ..fields.drift import DriftField
from ..fields.wave import WaveSolution
from ..finitediff import gradient, laplacian
from ..params import DiffusionParams
from .spaces import WeightedSpace


@dataclass
class OperatorMatrix:
    """Dense operator with the space it acts on and a provenance label."""

    space: WeightedSpace
    matrix: np.ndarray
    label: str = ""
    meta: dict | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix)
        n = self.space.grid.n
        if m.shape != (n, n):
            raise InputError(f"operator shape {m.shape} does not match grid n={n}")
        if not np.all(np.isfinite(m)):
            raise InputError("operator entries must be finite")
        self.matrix = m

    def apply(self, f: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(f)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.space, self.matrix @ other.matrix,
                                  f"({self.label} @ {other.label})")
        return self.matrix @ other


def commutator(a: OperatorMatrix | np.ndarray,
               b: OperatorMatrix | np.ndarray) -> np.ndarray:
    """Matrix commutator [a, b] = ab - ba."""
    ma = a.matrix if isinstance(a, OperatorMatrix) else np.asarray(a)
    mb = b.matrix if isinstance(b, OperatorMatrix) else np.asarray(b)
    return ma @ mb - mb @ ma


def closed_derivative_matrix(n: int, dx: float) -> np.ndarray:
    """Centered first derivative with the hard-wall closure.

    Interior rows are the exact centered stencil; boundary rows and
    columns are zero, making the matrix exactly antisymmetric.
    """
    D = np.zeros((n, n))
    c = 0.5 / dx
    idx = np.arange(1, n - 1)
    D[idx, idx + 1] = c
    D[idx, idx - 1] = -c
    D[:, 0] = 0.0
    D[:, -1] = 0.0
    return D


def closed_laplacian_matrix(n: int, dx: float) -> np.ndarray:
    """Centered second derivative with the hard-wall closure (symmetric)."""
    L = np.zeros((n, n))
    inv = 1.0 / (dx * dx)
    idx = np.arange(1, n - 1)
    L[idx, idx] = -2.0 * inv
    L[idx, idx + 1] = inv
    L[idx, idx - 1] = inv
    L[:, 0] = 0.0
    L[:, -1] = 0.0
    L[0, 0] = 0.0
    L[-1, -1] = 0.0
    return L


def averaging_matrix(n: int) -> np.ndarray:
    """The discrete unit produced by centered-stencil commutators.

    Nearest-neighbor average on interior rows, with the hard-wall closure
    (no reach into boundary columns); zero boundary rows.  Equals
    ``[D, X]`` for the closed derivative exactly.
    """
    A = np.zeros((n, n))
    idx = np.arange(1, n - 1)
    A[idx, idx - 1] = 0.5
    A[idx, idx + 1] = 0.5
    A[:, 0] = 0.0
    A[:, -1] = 0.0
    return A


def position_operator(space: WeightedSpace) -> OperatorMatrix:
    """Multiplication by the node coordinate."""
    return OperatorMatrix(space, np.diag(space.grid.x), "position")


def derivative_operator(space: WeightedSpace) -> OperatorMatrix:
    """Centered first derivative with the hard-wall closure."""
    return OperatorMatrix(space, closed_derivative_matrix(space.grid.n,
                                                          space.grid.dx),
                          "d/dx")


def velocity_operator(df: DriftField, p: DiffusionParams, space: WeightedSpace,
                      t: float = 0.0) -> OperatorMatrix:
    """Forward-velocity operator b(x,t) + 2 nu d/dx on the density-weighted space."""
    if not p.is_real:
        raise UnsupportedConfigError(
            "velocity_operator is a real-mode object; use "
            "mapped_velocity_operator on the continued branches")
    b_row = df.b_on_grid(t)
    mat = np.diag(b_row) + 2.0 * p.nu_real * closed_derivative_matrix(
        space.grid.n, space.grid.dx)
    return OperatorMatrix(space, mat, "velocity")


def mapped_velocity_operator(p: DiffusionParams, space: WeightedSpace
                             ) -> OperatorMatrix:
    """Gauge image of the velocity: 2 nu d/dx (pure derivative, any mode).

    On the continued branches this is ``+/- (i hbar / m) d/dx``, whose mass
    multiple is the momentum operator.
    """
    D = closed_derivative_matrix(space.grid.n, space.grid.dx)
    mat = (2.0 * p.nu) * D
    return OperatorMatrix(space, mat, "mapped_velocity")


def momentum_operator(p: DiffusionParams, space: WeightedSpace) -> OperatorMatrix:
    """P = m * (mapped velocity) = +/- i hbar d/dx; minus branch is standard."""
    if p.is_real:
        raise UnsupportedConfigError("momentum is a continued-branch object")
    op = mapped_velocity_operator(p, space)
    return OperatorMatrix(space, p.m * op.matrix, "momentum")


def gauge_map(f: np.ndarray, R: np.ndarray, S: np.ndarray,
              p: DiffusionParams) -> np.ndarray:
    """Multiply by ``exp(R + S/z)``: isometry from the density-weighted
    space onto its gauge image (NaN phase outside the mask counts as 0).

    On the continued branches ``S/z = -/+ i S`` makes the factor a pure
    gauge phase times ``exp(R)``.
    """
    sn = np.where(np.isnan(S), 0.0, S) / p.z
    factor = np.exp(R + sn)
    return factor * np.asarray(f)


def density_curvature(ws: WaveSolution, j: int = 0,
                      floor: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """(Lap sqrt(rho)) / sqrt(rho) on the full grid, plus the usable mask.

    Computed from ``exp(R)`` with centered stencils on the full grid; the
    mask marks where the density is above the solution's floor so callers
    can restrict assertions to trustworthy nodes.
    """
    sq = np.exp(ws.R[j])
    q = laplacian(sq, ws.grid.dx) / sq
    mask = ws.mask[j]
    if floor > 0:
        rho = np.exp(2.0 * ws.R[j])
        mask = rho > floor * rho.max()
    return q, mask


@dataclass
class AccelerationFields:
    """The two closed forms of the forward acceleration, for comparison."""

    grid_x: np.ndarray
    from_drift: np.ndarray
    from_potential: np.ndarray
    mask: np.ndarray

    def max_gap(self) -> float:
        d = np.abs(self.from_drift - self.from_potential)[self.mask]
        return float(d.max())


def acceleration_function(ws: WaveSolution, p: DiffusionParams,
                          V: np.ndarray, *, t_index: int = 0,
                          compare_floor: float | None = None
                          ) -> AccelerationFields:
    """Forward acceleration in drift form and in potential form.

    Drift form: ``db/dt + nu Lap b + (1/2) d(b^2)/dx`` from the drift of
    ``ws`` at this member's nu (the 1-d setting makes the rotational term
    vanish identically).  Potential form:
    ``(-dV/dx + d/dx[(hbar^2/2m + 2 m nu^2) (Lap sqrt(rho))/sqrt(rho)])/m``.
    The two agree within O(dx^2) on the comparison mask; ``compare_floor``
    (relative density) shrinks the mask to where both are resolvable --
    second derivatives of log-density amplify the truncation error in the
    far tails.

    ``db/dt`` uses centered differences across stored times; a single
    stored time is treated as stationary.
    """
    if not p.is_real:
        raise UnsupportedConfigError("acceleration fields are real-mode objects")
    from ..fields.drift import drift_fields

    nu = p.nu_real
    grid = ws.grid
    df = drift_fields(ws, p)
    b = df.b[t_index]
    rho = np.exp(2.0 * ws.R[t_index])
    mask = ws.mask[t_index]
    if compare_floor is not None:
        mask = rho > compare_floor * rho.max()
    if mask.sum() < 5:
        raise EmptyMaskError("mask too small to differentiate on")

    if ws.n_times == 1:
        db_dt = np.zeros(grid.n)
    else:
        tgrid = ws.times
        if t_index == 0:
            db_dt = (df.b[1] - df.b[0]) / (tgrid[1] - tgrid[0])
        elif t_index == ws.n_times - 1:
            db_dt = (df.b[-1] - df.b[-2]) / (tgrid[-1] - tgrid[-2])
        else:
            db_dt = (df.b[t_index + 1] - df.b[t_index - 1]) / (
                tgrid[t_index + 1] - tgrid[t_index - 1])

    a_drift = db_dt + nu * laplacian(b, grid.dx) + 0.5 * gradient(b * b, grid.dx)

    V = np.asarray(V, dtype=float)
    if V.shape != (grid.n,):
        raise InputError("V must be a nodal field on the grid")
    coeff = p.hbar ** 2 / (2.0 * p.m) + 2.0 * p.m * nu ** 2
    q, _ = density_curvature(ws, t_index)
    a_pot = (-gradient(V, grid.dx) + gradient(coeff * q, grid.dx)) / p.m
    return AccelerationFields(grid_x=grid.x, from_drift=a_drift,
                              from_potential=a_pot, mask=mask)


def rho_term_coefficient(p: DiffusionParams) -> complex:
    """``hbar^2/2m + 2 m nu^2``; exactly zero on the continued branches."""
    return p.hbar ** 2 / (2.0 * p.m) + 2.0 * p.m * p.nu ** 2


def hamiltonian(ws: WaveSolution | None, p: DiffusionParams, V: np.ndarray,
                space: WeightedSpace, *, t_index: int = 0) -> OperatorMatrix:
    """Generator of the time-derivative recursion.

    Real mode: ``2 m nu^2 Lap + V - (hbar^2/2m + 2 m nu^2) (Lap sqrt(rho))/sqrt(rho)``
    built from the stored density (which must exist).  Continued mode: the
    density term's coefficient vanishes identically and the matrix is the
    standard ``-(hbar^2/2m) Lap + V`` -- no wave solution needed.

    The matrix is tagged stationary when the stored density is static;
    the real-mode recursion requires that tag.
    """
    V = np.asarray(V, dtype=float)
    grid = space.grid
    if V.shape != (grid.n,):
        raise InputError("V must be a nodal field on the grid")
    Lap = closed_laplacian_matrix(grid.n, grid.dx)
    coeff = rho_term_coefficient(p)
    diag = np.zeros(grid.n)
    if p.is_real:
        if ws is None:
            raise InputError("real-mode Hamiltonian needs the wave solution")
        q, qmask = density_curvature(ws, t_index)
        if qmask.sum() < 5:
            raise EmptyMaskError(
                "density floor violated almost everywhere; the density term "
                "cannot be formed")
        q = np.where(qmask, q, 0.0)  # flat plateau outside the floor
        diag[1:-1] = (V - coeff.real * q)[1:-1]
        mat = 2.0 * p.m * p.nu_real ** 2 * Lap + np.diag(diag)
        stationary = _is_stationary(ws)
    else:
        diag[1:-1] = V[1:-1]
        mat = (-p.hbar ** 2 / (2.0 * p.m)) * Lap + np.diag(diag)
        stationary = True
    return OperatorMatrix(space, mat,
                          "hamiltonian",
                          meta={"stationary": stationary, "mode": p.mode,
                                "rho_coefficient": coeff})


def _is_stationary(ws: WaveSolution, tol: float = 1e-10) -> bool:
    if ws.n_times == 1:
        return True
    rho = np.exp(2.0 * ws.R)
    return float(np.max(np.abs(rho - rho[0]))) <= tol * float(rho.max())
