"""Implicit trapezoidal (Crank-Nicolson) Schrodinger stepper, hard walls.

The wavefunction is pinned to zero at both grid ends; the interior update
is the Cayley transform ``(1 + i dt H / 2 hbar)^-1 (1 - i dt H / 2 hbar)``,
which is exactly unitary in the nodal l2 norm for the symmetric tridiagonal
H, so the norm is conserved to roundoff at every step.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from ..errors import InputError, NumericalBreakdownError
from ..grids import Grid1D
from .wave import DEFAULT_RHO_FLOOR, WaveSolution

_NORM_TOL = 1e-6


def solve_schrodinger(V: np.ndarray, psi0: np.ndarray, grid: Grid1D,
                      dt: float, n_steps: int, *, m: float = 1.0,
                      hbar: float = 1.0, store_every: int = 1,
                      rho_floor: float = DEFAULT_RHO_FLOOR) -> WaveSolution:
    """Evolve ``psi0`` under ``-hbar^2/2m d^2/dx^2 + V`` for ``n_steps`` steps.

    Parameters
    ----------
    V : array
        Static real potential sampled on the grid nodes.
    psi0 : complex array
        Initial state, trapezoid-normalized to 1 within 1e-6.
    dt, n_steps
        Step size (> 0) and step count; ``n_steps = 0`` returns the input
        state unchanged.
    store_every : int
        Keep every k-th step (the initial state is always kept).

    Returns
    -------
    WaveSolution
        Stored snapshots with log-amplitude/phase populated at each time.

    Raises
    ------
    InputError
        Non-normalized psi0, non-finite or complex V, bad dt.
    NumericalBreakdownError
        If the tridiagonal solve degenerates (reported with its step index).
    """
    V = np.asarray(V, dtype=float)
    psi0 = np.asarray(psi0, dtype=complex)
    if V.shape != (grid.n,) or psi0.shape != (grid.n,):
        raise InputError("V and psi0 must be nodal fields on the grid")
    if not np.all(np.isfinite(V)):
        raise InputError("V must be finite")
    if n_steps < 0:
        raise InputError("n_steps must be >= 0")
    if n_steps > 0 and not dt > 0:
        raise InputError(f"dt must be positive, got {dt}")
    if store_every < 1:
        raise InputError("store_every must be >= 1")
    norm = grid.trapezoid(np.abs(psi0) ** 2)
    if abs(norm - 1.0) > _NORM_TOL:
        raise InputError(f"psi0 is not normalized: integral |psi0|^2 = {norm:.8f}")

    if n_steps == 0:
        return WaveSolution.from_psi(grid, [0.0], psi0[None, :].copy(),
                                     rho_floor=rho_floor)

    dx = grid.dx
    n_int = grid.n - 2
    kin = hbar * hbar / (2.0 * m * dx * dx)
    h_main = 2.0 * kin + V[1:-1]
    h_off = -kin * np.ones(n_int - 1)
    r = 0.5j * dt / hbar

    # banded form of A = 1 + r H (upper, main, lower rows)
    ab = np.zeros((3, n_int), dtype=complex)
    ab[0, 1:] = r * h_off
    ab[1, :] = 1.0 + r * h_main
    ab[2, :-1] = r * h_off

    p = psi0[1:-1].copy()
    stored = [psi0.copy()]
    stored_times = [0.0]
    for j in range(n_steps):
        rhs = (1.0 - r * h_main) * p
        rhs[:-1] -= r * h_off * p[1:]
        rhs[1:] -= r * h_off * p[:-1]
        try:
            p = solve_banded((1, 1), ab, rhs)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
            raise NumericalBreakdownError(
                f"tridiagonal solve failed at step {j}") from exc
        if not np.all(np.isfinite(p)):
            raise NumericalBreakdownError(
                f"non-finite wavefunction at step {j}")
        if (j + 1) % store_every == 0:
            full = np.zeros(grid.n, dtype=complex)
            full[1:-1] = p
            stored.append(full)
            stored_times.append((j + 1) * dt)
    if stored_times[-1] != n_steps * dt:
        full = np.zeros(grid.n, dtype=complex)
        full[1:-1] = p
        stored.append(full)
        stored_times.append(n_steps * dt)
    return WaveSolution.from_psi(grid, stored_times, np.array(stored),
                                 rho_floor=rho_floor)
