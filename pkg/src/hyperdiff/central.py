"""Nine-point central-difference baseline for anisotropic diffusion.

This is the reference scheme the relaxation method is compared against:
with a nonzero cross coefficient its corner entries carry both signs, so
it violates the discrete maximum principle regardless of the time step.
It exists to demonstrate that violation, not to fix it.
"""

from __future__ import annotations

import numpy as np

from .cases import CaseSpec
from .errors import ConfigError, DivergenceError
from .hyper import ConvergenceHistory
from .mesh import FieldState

__all__ = ["central_step", "central_solve_steady", "central_dt_limit"]


def central_dt_limit(case: CaseSpec) -> float:
    """Largest stable explicit step, 1 / (2 k_x/h_x^2 + 2 k_y/h_y^2),
    minimized over nodes for a per-node tensor."""
    grid = case.grid
    k_x, k_y, _, _ = case.k_fields()
    rate = 2.0 * k_x / grid.h_x**2 + 2.0 * k_y / grid.h_y**2
    return float(1.0 / np.max(rate))


def _mirror_extend(phi: np.ndarray) -> np.ndarray:
    """Ghost frame with values mirrored across each boundary line."""
    ext = np.empty((phi.shape[0] + 2, phi.shape[1] + 2))
    ext[1:-1, 1:-1] = phi
    ext[0, 1:-1] = phi[1, :]
    ext[-1, 1:-1] = phi[-2, :]
    ext[1:-1, 0] = phi[:, 1]
    ext[1:-1, -1] = phi[:, -2]
    ext[0, 0], ext[0, -1] = phi[1, 1], phi[1, -2]
    ext[-1, 0], ext[-1, -1] = phi[-2, 1], phi[-2, -2]
    return ext


def central_step(state: FieldState, case: CaseSpec, dt: float) -> FieldState:
    """One explicit step of the nine-point scheme.

    Pinned nodes are held; impermeable walls are realized by the mirror
    ghosts (zero normal flux of the axis-aligned part, vanishing cross
    bracket on the wall line).  The gradient variables are untouched.
    """
    grid = case.grid
    if state.phi.shape != grid.shape:
        raise ConfigError(
            f"state shape {state.phi.shape} does not match grid {grid.shape}"
        )
    limit = central_dt_limit(case)
    if dt > limit:
        raise ConfigError(f"dt={dt!r} exceeds the explicit stability limit {limit!r}")

    k_x, k_y, k_c, _ = case.k_fields()
    ax = k_x * dt / grid.h_x**2
    ay = k_y * dt / grid.h_y**2
    axy = k_c * dt / (2.0 * grid.h_x * grid.h_y)

    p = _mirror_extend(state.phi)
    c = p[1:-1, 1:-1]
    upd = (
        (1.0 - 2.0 * ax - 2.0 * ay) * c
        + ax * (p[2:, 1:-1] + p[:-2, 1:-1])
        + ay * (p[1:-1, 2:] + p[1:-1, :-2])
        + axy * (p[2:, 2:] - p[2:, :-2] - p[:-2, 2:] + p[:-2, :-2])
    )
    mask = case.pinned_mask()
    phi_new = np.where(mask, state.phi, upd)
    new = FieldState(phi_new, state.u.copy(), state.v.copy(), step=state.step + 1)
    if not np.isfinite(phi_new).all():
        raise DivergenceError(new.step)
    return new


def central_solve_steady(
    case: CaseSpec, dt: float, tol: float, max_steps: int
) -> tuple[FieldState, ConvergenceHistory]:
    """March the explicit scheme toward steady state.

    Uses the same residual metric and non-convergence semantics as the
    relaxation solver: max|phi^{n+1} - phi^n| / dt against tol, with
    the converged flag left false when max_steps runs out.
    """
    from .hyper import initial_state

    if max_steps < 1:
        raise ConfigError(f"max_steps must be >= 1, got {max_steps!r}")
    state = initial_state(case)
    history = ConvergenceHistory()
    residual = float("inf")
    report_every = 1000
    for _ in range(max_steps):
        new = central_step(state, case, dt)
        residual = float(np.max(np.abs(new.phi - state.phi))) / dt
        state = new
        if not np.isfinite(residual):
            raise DivergenceError(state.step)
        if state.step % report_every == 0:
            history.samples.append((state.step, residual))
        if residual <= tol:
            history.converged = True
            break
    if not history.samples or history.samples[-1][0] != state.step:
        history.samples.append((state.step, residual))
    history.final_residual = residual
    history.steps = state.step
    return state, history
