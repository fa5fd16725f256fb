"""Newton solve of the prescribed-boundary-length problem K(u) = Kbar.

The curvature map has the symmetric negative definite Jacobian Delta, so
each iteration solves -Delta d = -(K - Kbar) via a Cholesky factorization
of -Delta and backtracks the step until the trial state is admissible and
the residual satisfies a sufficient-decrease condition.  Existence and
uniqueness of the solution for any positive target is guaranteed, so a
converged result is the solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import NoDescentError, StateError
from .curvature import curvature, laplacian
from .mesh import ConformalState, IdealTriangulation, validate_state

MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class SolveResult:
    u_star: ConformalState
    iterations: int
    residual_inf: float
    converged: bool


def default_start(m: IdealTriangulation) -> ConformalState:
    """Uniform interior point u = -min(1, min(phi)/4); every edge slack is
    then phi - 2 min(1, phi/4) > 0."""
    c = -min(1.0, min(e.phi for e in m.edges) / 4.0)
    return validate_state(m, np.full(m.n_boundary, c))


def newton_solve(m: IdealTriangulation, s0: ConformalState | None, kbar,
                 tol: float = 1e-12, max_iter: int = 50) -> SolveResult:
    """Globalized Newton iteration for K(u) = kbar.

    Raises NoDescentError when backtracking cannot find an admissible step
    with residual decrease; a Ricci-flow warm start is the usual remedy.
    """
    kbar = np.asarray(kbar, dtype=float)
    if kbar.shape != (m.n_boundary,):
        raise ValueError(f"target has {kbar.size} entries, mesh has {m.n_boundary}")
    if not np.all(kbar > 0):
        raise ValueError("every target entry must be positive")
    if not tol > 0:
        raise ValueError("tol must be positive")

    state = s0 if s0 is not None else default_start(m)
    resid = curvature(m, state) - kbar
    resid_inf = float(np.max(np.abs(resid)))

    for it in range(max_iter):
        if resid_inf < tol:
            return SolveResult(u_star=state, iterations=it,
                               residual_inf=resid_inf, converged=True)
        # Newton direction: u <- u - Delta^{-1} resid, via SPD factor of -Delta
        factor = cho_factor(-laplacian(m, state))
        d = -cho_solve(factor, resid)
        t = 1.0
        for _ in range(MAX_BACKTRACKS):
            try:
                trial = validate_state(m, state.u - t * d)
            except StateError:
                t *= 0.5
                continue
            trial_resid = curvature(m, trial) - kbar
            trial_inf = float(np.max(np.abs(trial_resid)))
            if trial_inf <= (1.0 - t / 4.0) * resid_inf:
                state, resid, resid_inf = trial, trial_resid, trial_inf
                break
            t *= 0.5
        else:
            raise NoDescentError(
                f"backtracking exhausted at iteration {it} "
                f"(residual {resid_inf!r})")

    return SolveResult(u_star=state, iterations=max_iter,
                       residual_inf=resid_inf, converged=resid_inf < tol)
