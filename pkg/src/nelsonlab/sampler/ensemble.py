"""Euler-Maruyama ensembles of the diffusion dx = b dt + dW, E(dW^2) = 2 nu dt."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError, NumericalBreakdownError, UnsupportedConfigError
from ..fields.drift import DriftField
from ..grids import Grid1D
from ..params import DiffusionParams
from . import rng


@dataclass
class Ensemble:
    """Matrix of sample paths ``paths[k, j] = x_k(t0 + j dt)``.

    ``dt`` is the spacing of the *stored* columns; when the integrator
    substeps (``store_every > 1``), ``sde_dt`` records the finer step it
    actually took.  Regenerating with the same (seed, drift, steps,
    n_paths) gives a bit-identical matrix regardless of how path chunks
    were scheduled.
    """

    paths: np.ndarray
    dt: float
    t0: float
    seed: int
    params: DiffusionParams
    provenance: str
    x_min: float
    x_max: float
    sde_dt: float | None = None

    def __post_init__(self):
        if self.sde_dt is None:
            self.sde_dt = self.dt

    @property
    def n_paths(self) -> int:
        return self.paths.shape[0]

    @property
    def n_steps(self) -> int:
        return self.paths.shape[1] - 1

    def time(self, j: int) -> float:
        return self.t0 + j * self.dt

    def positions(self, j: int) -> np.ndarray:
        return self.paths[:, j]


def sample_initial(rho0: np.ndarray, grid: Grid1D, n_paths: int,
                   seed: int) -> np.ndarray:
    """Inverse-CDF draw of n_paths positions from a nodal density.

    The CDF is the cumulative trapezoid of ``rho0``; uniforms come from the
    dedicated initial-positions stream of ``seed``, so the draw is
    deterministic and independent of everything simulated later.
    """
    rho0 = np.asarray(rho0, dtype=float)
    if rho0.shape != (grid.n,):
        raise InputError("rho0 must be a nodal field on the grid")
    if rho0.min() < 0:
        raise InputError("rho0 must be nonnegative")
    total = grid.trapezoid(rho0)
    if total <= 0:
        raise InputError("rho0 is degenerate (zero mass)")
    if n_paths < 0:
        raise InputError("n_paths must be >= 0")
    if n_paths == 0:
        return np.empty(0)
    mids = 0.5 * (rho0[:-1] + rho0[1:])
    cdf = np.concatenate(([0.0], np.cumsum(mids) * grid.dx)) / total
    cdf[-1] = 1.0
    u = rng.stream_uniforms(seed, rng.INIT_TAG, n_paths)
    return np.interp(u, cdf, grid.x)


def reflect(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Fold positions into [lo, hi] by specular reflection at the walls."""
    width = hi - lo
    y = np.mod(x - lo, 2.0 * width)
    return lo + np.minimum(y, 2.0 * width - y)


def simulate_ensemble(df: DriftField, init: np.ndarray, p: DiffusionParams,
                      dt: float, n_steps: int, seed: int, *,
                      n_workers: int = 1, store_every: int = 1) -> Ensemble:
    """Integrate the ensemble with explicit Euler-Maruyama steps.

    ``x_{j+1} = x_j + b(x_j, t_j) dt + dW_j`` with ``dW_j`` zero-mean
    Gaussian of variance ``2 nu dt``; the drift is linear interpolation of
    the field in x and t; reflecting walls at the grid ends keep paths in
    the box.  ``n_workers`` only controls how paths are chunked -- the
    result is identical for every value (per-step noise rows are keyed by
    the seed and sliced per chunk).  ``store_every`` keeps every k-th step
    (``n_steps`` must divide evenly); the stored matrix then represents
    the process observed at spacing ``k dt``, with the integration step
    recorded separately.

    Raises
    ------
    InputError
        Continued-mode parameters, or a drift so large that
        ``max|b| dt >= 10 dx`` (step would jump many cells).
    NumericalBreakdownError
        Non-finite position (reported with path and step index).
    """
    if not p.is_real:
        raise UnsupportedConfigError("sampling needs a real diffusion constant")
    init = np.asarray(init, dtype=float)
    if init.ndim != 1:
        raise InputError("init must be a 1-d array of positions")
    bad0 = ~np.isfinite(init)
    if bad0.any():
        raise NumericalBreakdownError(
            f"non-finite position for path {int(np.argmax(bad0))} at step 0")
    if n_steps < 0:
        raise InputError("n_steps must be >= 0")
    if n_steps > 0 and not dt > 0:
        raise InputError(f"dt must be positive, got {dt}")
    if n_workers < 1:
        raise InputError("n_workers must be >= 1")
    if store_every < 1 or (n_steps % store_every and n_steps > 0):
        raise InputError("store_every must be >= 1 and divide n_steps")
    guard = df.max_abs_b() * dt
    if guard >= 10.0 * df.grid.dx:
        raise InputError(
            f"dt too large for this drift: max|b| dt = {guard:.3g} exceeds "
            f"10 dx = {10 * df.grid.dx:.3g}")

    nu = p.nu_real
    n_paths = init.size
    lo, hi = df.grid.x_min, df.grid.x_max
    n_stored = n_steps // store_every
    paths = np.empty((n_paths, n_stored + 1))
    paths[:, 0] = reflect(init, lo, hi)
    x = paths[:, 0].copy()
    sigma = np.sqrt(2.0 * nu * dt)

    bounds = np.linspace(0, n_paths, n_workers + 1).astype(int)
    x_next = np.empty_like(x)
    for j in range(n_steps):
        t = j * dt
        for w in range(n_workers):
            a, b_ = bounds[w], bounds[w + 1]
            if a == b_:
                continue
            xw = x[a:b_]
            z = rng.step_normals(seed, j, n_paths, a, b_)
            x_next[a:b_] = xw + df.b_at(t, xw) * dt + sigma * z
        bad = ~np.isfinite(x_next)
        if bad.any():
            k = int(np.argmax(bad))
            raise NumericalBreakdownError(
                f"non-finite position for path {k} at step {j + 1}")
        x = reflect(x_next, lo, hi)
        if (j + 1) % store_every == 0:
            paths[:, (j + 1) // store_every] = x
    return Ensemble(paths=paths, dt=dt * store_every, t0=0.0, seed=seed,
                    params=p, provenance=df.provenance, x_min=lo, x_max=hi,
                    sde_dt=dt)
