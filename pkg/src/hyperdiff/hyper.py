"""Two-stage relaxation scheme for anisotropic diffusion.

The diffusion problem is marched in pseudo-time as a first-order system
in (phi, u, v), where the gradient variables satisfy
alpha_s * (u, v) = -K grad(phi) at steady state.  Each step is:

  stage 1   point-implicit 2x2 solve for (u, v) at every geometric
            interior node, coupling them through the source terms while
            keeping the upwind flux differences explicit;
  stage 2   explicit update of phi from its own upwind differences plus
            alpha_s times the central flux divergence of the fresh
            (u, v);
  closure   pinned values are reasserted and boundary values of
            unpinned variables are copied from the adjacent interior
            node (zeroth-order extrapolation).

The unrefined variant uses the previous-step (u, v) in stage 2; it is
kept only for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cases import CaseSpec
from .errors import ConfigError, DivergenceError, SingularSourceError
from .mesh import FieldState, GridSpec, NodeRole
from .tensor import DiffusionTensor

__all__ = [
    "SolverConfig",
    "SourceSolve",
    "ConvergenceHistory",
    "FluxField",
    "source_matrices",
    "hyper_step",
    "solve_steady",
    "flux_field",
]

SCHEMES = ("hyperbolic", "hyperbolic-unrefined")


@dataclass(frozen=True)
class SolverConfig:
    """Pseudo-time marching parameters.

    The flux Jacobians of the relaxation system have unit wave speeds,
    so dt may not exceed the mesh size in either direction.
    """

    alpha_s: float
    dt: float
    tol: float = 1e-8
    max_steps: int = 10**6
    report_every: int = 1000
    scheme: str = "hyperbolic"

    def __post_init__(self):
        if not self.alpha_s > 0.0:
            raise ConfigError(f"alpha_s must be positive, got {self.alpha_s!r}")
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt!r}")
        if not self.tol > 0.0:
            raise ConfigError(f"tol must be positive, got {self.tol!r}")
        if self.max_steps < 1:
            raise ConfigError(f"max_steps must be >= 1, got {self.max_steps!r}")
        if self.report_every < 1:
            raise ConfigError(f"report_every must be >= 1, got {self.report_every!r}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")

    def check_grid(self, grid: GridSpec) -> None:
        limit = min(grid.h_x, grid.h_y)
        if self.dt > limit:
            raise ConfigError(
                f"dt={self.dt!r} exceeds the unit-wave-speed limit min(h_x, h_y)={limit!r}"
            )


@dataclass(frozen=True)
class SourceSolve:
    """Cached point-implicit solve for the gradient variables.

    beta_* = k_* alpha_s dt / delta;  det_b = (1+beta_x)(1+beta_y) - beta_c^2.
    (m11, m12, m22) is the symmetric inverse of
    [[1+beta_y, -beta_c], [-beta_c, 1+beta_x]], i.e.
    m11 = (1+beta_x)/det_b, m12 = beta_c/det_b, m22 = (1+beta_y)/det_b.
    Fields are scalars for a uniform tensor and arrays for a per-node one.
    """

    beta_x: float | np.ndarray
    beta_y: float | np.ndarray
    beta_c: float | np.ndarray
    det_b: float | np.ndarray
    m11: float | np.ndarray
    m12: float | np.ndarray
    m22: float | np.ndarray


def _source_solve(k_x, k_y, k_c, delta, alpha_s: float, dt: float) -> SourceSolve:
    scale = alpha_s * dt / delta
    bx, by, bc = k_x * scale, k_y * scale, k_c * scale
    det = (1.0 + bx) * (1.0 + by) - bc * bc
    if np.any(det == 0.0):
        raise SingularSourceError(alpha_s)
    return SourceSolve(
        beta_x=bx,
        beta_y=by,
        beta_c=bc,
        det_b=det,
        m11=(1.0 + bx) / det,
        m12=bc / det,
        m22=(1.0 + by) / det,
    )


def source_matrices(tensor: DiffusionTensor, alpha_s: float, dt: float) -> SourceSolve:
    """Point-implicit source solve for a uniform tensor.

    For alpha_s > 0 the determinant is strictly positive; it vanishes
    only at the two negative solvability thresholds (see
    ``analysis.alpha_thresholds``), where this raises.
    """
    if dt <= 0.0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    return _source_solve(tensor.k_x, tensor.k_y, tensor.k_c, tensor.delta, alpha_s, dt)


@dataclass
class ConvergenceHistory:
    """Sampled residual trace of one pseudo-time march."""

    samples: list[tuple[int, float]] = field(default_factory=list)
    final_residual: float = float("inf")
    converged: bool = False
    steps: int = 0


@dataclass(frozen=True)
class FluxField:
    """Flux gamma = alpha_s * (u, v) and the gradient-variable speed."""

    gamma_x: np.ndarray
    gamma_y: np.ndarray
    speed: np.ndarray


class _Stepper:
    """Precomputed per-case geometry and coefficients for the march."""

    def __init__(self, case: CaseSpec, cfg: SolverConfig):
        cfg.check_grid(case.grid)
        grid = case.grid
        self.case = case
        self.cfg = cfg
        self.cx = cfg.dt / grid.h_x
        self.cy = cfg.dt / grid.h_y

        k_x, k_y, k_c, delta = case.k_fields()
        if isinstance(k_x, np.ndarray):
            inner = (slice(1, -1), slice(1, -1))
            src = _source_solve(
                k_x[inner], k_y[inner], k_c[inner], delta[inner], cfg.alpha_s, cfg.dt
            )
        else:
            src = _source_solve(k_x, k_y, k_c, delta, cfg.alpha_s, cfg.dt)
        self.src = src

        roles = case.roles
        self.interior_inner = roles[1:-1, 1:-1] == NodeRole.INTERIOR
        self.pinned_mask = case.pinned_mask()
        self.pinned_values = np.where(self.pinned_mask, case.pinned, 0.0)
        self.wall_left = roles[0, :] == NodeRole.WALL
        self.wall_right = roles[-1, :] == NodeRole.WALL
        self.wall_bottom = roles[:, 0] == NodeRole.WALL
        self.wall_top = roles[:, -1] == NodeRole.WALL
        self.wall_mask = roles == NodeRole.WALL

    def step(self, state: FieldState) -> FieldState:
        phi, u, v = state.phi, state.u, state.v
        cx, cy = self.cx, self.cy
        hx, hy = 0.5 * cx, 0.5 * cy
        alpha = self.cfg.alpha_s
        src = self.src

        # Stage 1: implicit 2x2 solve on the geometric interior.
        rhs_u = (
            (1.0 - cx) * u[1:-1, 1:-1]
            + hx * (u[:-2, 1:-1] + u[2:, 1:-1])
            + hx * (phi[:-2, 1:-1] - phi[2:, 1:-1])
        )
        rhs_v = (
            (1.0 - cy) * v[1:-1, 1:-1]
            + hy * (v[1:-1, :-2] + v[1:-1, 2:])
            + hy * (phi[1:-1, :-2] - phi[1:-1, 2:])
        )
        u_new = u.copy()
        v_new = v.copy()
        u_new[1:-1, 1:-1] = src.m11 * rhs_u + src.m12 * rhs_v
        v_new[1:-1, 1:-1] = src.m12 * rhs_u + src.m22 * rhs_v

        # Stage 2: explicit phi update; the unrefined variant reads the
        # previous-step gradient variables instead of the fresh ones.
        gu, gv = (u, v) if self.cfg.scheme == "hyperbolic-unrefined" else (u_new, v_new)
        upd = (
            (1.0 - cx - cy) * phi[1:-1, 1:-1]
            + hx * (phi[:-2, 1:-1] + phi[2:, 1:-1])
            + hy * (phi[1:-1, :-2] + phi[1:-1, 2:])
            + alpha * hx * (gu[:-2, 1:-1] - gu[2:, 1:-1])
            + alpha * hy * (gv[1:-1, :-2] - gv[1:-1, 2:])
        )
        phi_new = phi.copy()
        phi_new[1:-1, 1:-1] = np.where(self.interior_inner, upd, phi[1:-1, 1:-1])

        # Closure: wall phi copies the adjacent interior value, ...
        phi_new[0, self.wall_left] = phi_new[1, self.wall_left]
        phi_new[-1, self.wall_right] = phi_new[-2, self.wall_right]
        phi_new[self.wall_bottom, 0] = phi_new[self.wall_bottom, 1]
        phi_new[self.wall_top, -1] = phi_new[self.wall_top, -1 - 1]

        # ... boundary gradient variables extrapolate zeroth-order
        # (corners pick up the diagonal interior neighbor), ...
        for arr in (u_new, v_new):
            arr[0, :] = arr[1, :]
            arr[-1, :] = arr[-2, :]
            arr[:, 0] = arr[:, 1]
            arr[:, -1] = arr[:, -2]

        # ... and pins are reasserted.
        v_new[self.wall_mask] = 0.0
        np.copyto(phi_new, self.pinned_values, where=self.pinned_mask)

        return FieldState(phi_new, u_new, v_new, step=state.step + 1)


def hyper_step(state: FieldState, case: CaseSpec, cfg: SolverConfig) -> FieldState:
    """Advance one pseudo-time step (pure: returns a new state)."""
    if state.phi.shape != case.grid.shape:
        raise ConfigError(
            f"state shape {state.phi.shape} does not match grid {case.grid.shape}"
        )
    new = _Stepper(case, cfg).step(state)
    if not new.all_finite():
        raise DivergenceError(new.step)
    return new


def initial_state(case: CaseSpec) -> FieldState:
    """phi = 0 except pinned nodes; u = v = 0."""
    state = FieldState.zeros(case.grid)
    mask = case.pinned_mask()
    state.phi[mask] = case.pinned[mask]
    return state


def solve_steady(case: CaseSpec, cfg: SolverConfig) -> tuple[FieldState, ConvergenceHistory]:
    """March until max|phi^{n+1} - phi^n| / dt <= tol or max_steps.

    Non-convergence is reported through the history flag, not raised;
    a non-finite state raises DivergenceError.
    """
    stepper = _Stepper(case, cfg)
    state = initial_state(case)
    history = ConvergenceHistory()
    residual = float("inf")
    for _ in range(cfg.max_steps):
        new = stepper.step(state)
        residual = float(np.max(np.abs(new.phi - state.phi))) / cfg.dt
        state = new
        if not np.isfinite(residual):
            raise DivergenceError(state.step)
        if state.step % cfg.report_every == 0:
            history.samples.append((state.step, residual))
        if residual <= cfg.tol:
            history.converged = True
            break
    if not state.all_finite():
        raise DivergenceError(state.step)
    if not history.samples or history.samples[-1][0] != state.step:
        history.samples.append((state.step, residual))
    history.final_residual = residual
    history.steps = state.step
    return state, history


def flux_field(state: FieldState, alpha_s: float) -> FluxField:
    """Flux carried by the gradient variables, gamma = alpha_s (u, v),
    plus their speed sqrt(u^2 + v^2)."""
    if not alpha_s > 0.0:
        raise ConfigError(f"alpha_s must be positive, got {alpha_s!r}")
    return FluxField(
        gamma_x=alpha_s * state.u,
        gamma_y=alpha_s * state.v,
        speed=np.hypot(state.u, state.v),
    )
