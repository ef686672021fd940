"""Operator evolution: the recursion, evolved positions, and correlations.

Higher time-derivative operators follow the single recursion

    X^{k+1} = (1 / 2 m nu) [H, X^k]        (+ d/dt of coefficients, zero
                                            for the stationary states
                                            these formulas are used on)

which is analytic in nu: on the continued branches ``1/(2 m nu)`` becomes
``-/+ i / hbar`` and the recursion is the standard quantum one.  The
evolved position at finite time is either the Taylor sum of the recursion
or, on the continued branches, the exact unitary conjugation by the
eigendecomposition of the interior Hamiltonian.
"""
from __future__ import annotations

from math import factorial

import numpy as np

from ..errors import InputError, NumericalBreakdownError, UnsupportedConfigError
from ..fields.wave import WaveSolution
from ..finitediff import dirichlet_laplacian_matrix
from ..params import DiffusionParams
from .operators import OperatorMatrix, commutator
from .spaces import WeightedSpace

_STATE_NORM_TOL = 1e-6


def time_derivative_recursion(X0: OperatorMatrix, H: OperatorMatrix,
                              p: DiffusionParams, n_target: int
                              ) -> list[OperatorMatrix]:
    """X^1 .. X^{n_target} from repeated commutators with H / (2 m nu).

    In real mode the Hamiltonian must have been built from a stationary
    density (its coefficient fields carry no time dependence); a
    non-stationary real-mode H is rejected.
    """
    if n_target < 1:
        raise InputError("n_target must be >= 1")
    if p.is_real and H.meta is not None and not H.meta.get("stationary", True):
        raise UnsupportedConfigError(
            "real-mode recursion is defined for stationary densities only")
    scale = 1.0 / (2.0 * p.m * p.nu)
    out: list[OperatorMatrix] = []
    current = X0.matrix.astype(complex)
    for k in range(n_target):
        current = scale * commutator(H.matrix, current)
        out.append(OperatorMatrix(X0.space, current,
                                  f"time_derivative^{k + 1}"))
    return out


def taylor_heisenberg(X: OperatorMatrix, H: OperatorMatrix, s: float,
                      order: int, p: DiffusionParams) -> OperatorMatrix:
    """Evolved position as the order-limited Taylor sum of the recursion.

    The order-k term is ``X^k s^k / k!``.  Truncation tracks the exact
    conjugation only while ``|s| * (spectral diameter of H / 2 m nu)``
    stays modest; see the verification suite notes.
    """
    if order < 0:
        raise InputError("order must be >= 0")
    total = X.matrix.astype(complex).copy()
    if order > 0:
        derivs = time_derivative_recursion(X, H, p, order)
        for k, Xk in enumerate(derivs, start=1):
            total += Xk.matrix * (s ** k / factorial(k))
    return OperatorMatrix(X.space, total, f"taylor_evolved(s={s:g}, order={order})")


def heisenberg_operator(X: OperatorMatrix, H: OperatorMatrix, s: float,
                        p: DiffusionParams) -> OperatorMatrix:
    """Exact evolved position on a continued branch.

    ``X(s) = exp(-/+ i H s / hbar) X exp(+/- i H s / hbar)`` (minus branch
    gives the standard convention), realized by the eigendecomposition of
    the Hamiltonian restricted to interior nodes (hard walls).  Boundary
    rows pass through unchanged from X.
    """
    if p.is_real:
        raise UnsupportedConfigError(
            "exact conjugation is a continued-branch operation; use "
            "taylor_heisenberg or the stationary semigroup in real mode")
    n = X.space.grid.n
    h_int = H.matrix[1:-1, 1:-1]
    if np.max(np.abs(h_int.imag)) > 0:
        raise InputError("continued-mode Hamiltonian must be real symmetric")
    try:
        lam, U = np.linalg.eigh(h_int.real)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise NumericalBreakdownError("eigendecomposition failed") from exc
    # minus branch: X(s) = e^{+iHs/hbar} X e^{-iHs/hbar}
    phase = np.exp(-1j * p.sign * lam * s / p.hbar)
    left = (U * phase) @ U.T
    right = (U * np.conj(phase)) @ U.T
    out = X.matrix.astype(complex).copy()
    out[1:-1, 1:-1] = left @ X.matrix[1:-1, 1:-1] @ right
    return OperatorMatrix(X.space, out, f"heisenberg(s={s:g})")


def correlation(state: np.ndarray, ops: list[OperatorMatrix],
                space: WeightedSpace) -> complex:
    """Sandwich ``(state, ops[0] ops[1] ... ops[-1] state)`` in the space.

    Operators are listed exactly as they appear in the written product
    (leftmost entry outermost, i.e. applied last).  The state must be
    normalized in the space within 1e-6.
    """
    state = np.asarray(state)
    if state.shape != (space.grid.n,):
        raise InputError("state must be a nodal field on the space's grid")
    nrm = space.inner(state, state).real
    if abs(nrm - 1.0) > _STATE_NORM_TOL:
        raise InputError(f"state is not normalized in this space: (f,f) = {nrm:.8f}")
    vec = state.astype(complex)
    for op in reversed(ops):
        if op.space.grid.n != space.grid.n:
            raise InputError("operator/state dimension mismatch")
        vec = op.matrix @ vec
    return space.inner(state, vec)


def stationary_generator(ws: WaveSolution, p: DiffusionParams,
                         t_index: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Gauge-image generator of the stationary diffusion on interior nodes.

    Returns ``(L, theta)`` with ``L = nu (Lap_D - diag(Lap_D theta / theta))``
    and ``theta = sqrt(rho)`` on the interior nodes: a symmetric matrix
    whose construction makes ``L theta = 0`` exact, so ``exp(s L)`` is a
    stable contraction with theta invariant.  This is the Hamiltonian of
    the recursion shifted by the state's energy and divided by ``2 m nu``,
    up to O(dx^2).
    """
    if not p.is_real:
        raise UnsupportedConfigError("the stationary semigroup is real-mode only")
    grid = ws.grid
    theta = np.exp(ws.R[t_index])[1:-1]
    lap = dirichlet_laplacian_matrix(grid.n - 2, grid.dx)
    q = (lap @ theta) / theta
    L = p.nu_real * (lap - np.diag(q))
    return L, theta


def two_time_position_correlation(ws: WaveSolution, p: DiffusionParams,
                                  s: float, V: np.ndarray | None = None,
                                  t_index: int = 0) -> complex:
    """Stationary-state matrix element of the lag-s position pair.

    Real mode: ``(X theta, exp(s L) X theta)`` with the stationary
    semigroup above -- the operator form of the path average
    ``E[x(t) x(t+s)]``, equal for the ground-state diffusion to the
    autocovariance ``var * exp(-2 nu s)`` of the corresponding
    Ornstein-Uhlenbeck process.

    Continued branches: ``(psi, X(s) X psi)`` in the flat space with
    ``psi = exp(R + iS)`` and the exact conjugation for ``X(s)`` (needs
    the potential ``V``); the minus branch reproduces the standard
    quantum two-point function.
    """
    grid = ws.grid
    xi = grid.x[1:-1]
    if p.is_real:
        L, theta = stationary_generator(ws, p, t_index)
        theta = theta / np.sqrt(np.sum(theta ** 2) * grid.dx)
        lam, U = np.linalg.eigh(L)
        v = xi * theta
        w = U.T @ v
        return complex(np.sum(w * np.exp(lam * s) * w) * grid.dx)
    if V is None:
        raise InputError("continued-mode correlation needs the potential V")
    from .operators import hamiltonian, position_operator
    from .spaces import build_space
    space = build_space(grid, "L2")
    H = hamiltonian(None, p, V, space)
    X = position_operator(space)
    Xs = heisenberg_operator(X, H, s, p)
    psi = np.exp(ws.R[t_index] + 1j * np.where(np.isnan(ws.S[t_index]), 0.0,
                                               ws.S[t_index]))
    psi = space.normalize(psi)
    return correlation(psi, [Xs, X], space)
