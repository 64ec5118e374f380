"""Structured node-centered grid on the unit square and field storage.

Arrays are indexed ``[i, j]`` with ``i`` along x and ``j`` along y;
node (i, j) sits at (i*h_x, j*h_y) for 0 <= i <= n_x, 0 <= j <= n_y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import ConfigError

__all__ = [
    "GridSpec",
    "NodeRole",
    "FieldState",
    "DmpReport",
    "profile_along_midline",
    "dmp_report",
    "write_field_csv",
    "write_profile_csv",
    "write_speed_csv",
]


class NodeRole(IntEnum):
    """Role of a node in the boundary/fixed-value bookkeeping.

    INTERIOR nodes are updated by the scheme.  DIRICHLET and FIXED nodes
    pin the main variable (FIXED marks pinned nodes in the geometric
    interior, whose gradient variables are still updated).  WALL nodes
    pin the y gradient variable to zero (impermeable boundary).
    """

    INTERIOR = 0
    DIRICHLET = 1
    WALL = 2
    FIXED = 3


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with n_x cells in x and n_y in y (so n_x+1 by n_y+1
    nodes) covering [0, 1]^2."""

    n_x: int
    n_y: int

    def __post_init__(self):
        if self.n_x < 2 or self.n_y < 2:
            raise ConfigError(f"need at least 2 cells per direction, got {self.n_x}x{self.n_y}")

    @property
    def h_x(self) -> float:
        return 1.0 / self.n_x

    @property
    def h_y(self) -> float:
        return 1.0 / self.n_y

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_x + 1, self.n_y + 1)

    def x_nodes(self) -> np.ndarray:
        return np.arange(self.n_x + 1) / self.n_x

    def y_nodes(self) -> np.ndarray:
        return np.arange(self.n_y + 1) / self.n_y


@dataclass
class FieldState:
    """Main variable and the two gradient variables at one pseudo-time
    level.  All entries must stay finite; a NaN/Inf anywhere is treated
    as solver divergence."""

    phi: np.ndarray
    u: np.ndarray
    v: np.ndarray
    step: int = 0

    @classmethod
    def zeros(cls, grid: GridSpec) -> "FieldState":
        shape = grid.shape
        return cls(np.zeros(shape), np.zeros(shape), np.zeros(shape), step=0)

    def copy(self) -> "FieldState":
        return FieldState(self.phi.copy(), self.u.copy(), self.v.copy(), self.step)

    def all_finite(self) -> bool:
        return bool(
            np.isfinite(self.phi).all()
            and np.isfinite(self.u).all()
            and np.isfinite(self.v).all()
        )


@dataclass(frozen=True)
class DmpReport:
    """Extrema of the main variable against expected bounds."""

    min_phi: float
    max_phi: float
    undershoot: float
    overshoot: float
    frac_below: float
    frac_above: float
    satisfied: bool
    lower: float
    upper: float
    tol: float


def profile_along_midline(state: FieldState, grid: GridSpec) -> list[tuple[float, float]]:
    """(x, phi) pairs along the node row nearest y = 0.5, ascending x."""
    if state.phi.shape != grid.shape:
        raise ConfigError(
            f"state shape {state.phi.shape} does not match grid {grid.shape}"
        )
    j_mid = round(grid.n_y / 2)
    xs = grid.x_nodes()
    return [(float(xs[i]), float(state.phi[i, j_mid])) for i in range(grid.n_x + 1)]


def dmp_report(state: FieldState, lower: float, upper: float, tol: float = 1e-9) -> DmpReport:
    """Check ``lower - tol <= phi <= upper + tol`` over every node.

    The default tolerance 1e-9 sits well below the unit physical scale
    but above rounding accumulated over very long pseudo-time marches.
    """
    if not lower < upper:
        raise ConfigError(f"need lower < upper, got {lower!r}, {upper!r}")
    if tol < 0.0:
        raise ConfigError(f"tol must be nonnegative, got {tol!r}")
    phi = state.phi
    mn, mx = float(phi.min()), float(phi.max())
    n = phi.size
    return DmpReport(
        min_phi=mn,
        max_phi=mx,
        undershoot=max(lower - mn, 0.0),
        overshoot=max(mx - upper, 0.0),
        frac_below=float(np.count_nonzero(phi < lower - tol)) / n,
        frac_above=float(np.count_nonzero(phi > upper + tol)) / n,
        satisfied=bool(mn >= lower - tol and mx <= upper + tol),
        lower=lower,
        upper=upper,
        tol=tol,
    )


def _fmt(v: float) -> str:
    # 17 significant digits round-trip float64 exactly.
    return format(float(v), ".17g")


def write_field_csv(path, state: FieldState, grid: GridSpec) -> None:
    """Dump x,y,phi,u,v rows ordered j-major (all i for j=0, then j=1, ...)."""
    xs, ys = grid.x_nodes(), grid.y_nodes()
    with open(path, "w") as f:
        f.write("x,y,phi,u,v\n")
        for j in range(grid.n_y + 1):
            for i in range(grid.n_x + 1):
                f.write(
                    f"{_fmt(xs[i])},{_fmt(ys[j])},{_fmt(state.phi[i, j])},"
                    f"{_fmt(state.u[i, j])},{_fmt(state.v[i, j])}\n"
                )


def write_profile_csv(path, state: FieldState, grid: GridSpec) -> None:
    with open(path, "w") as f:
        f.write("x,phi\n")
        for x, phi in profile_along_midline(state, grid):
            f.write(f"{_fmt(x)},{_fmt(phi)}\n")


def write_speed_csv(path, state: FieldState, grid: GridSpec) -> None:
    """Dump x,y,speed with speed = sqrt(u^2 + v^2), j-major."""
    xs, ys = grid.x_nodes(), grid.y_nodes()
    speed = np.hypot(state.u, state.v)
    with open(path, "w") as f:
        f.write("x,y,speed\n")
        for j in range(grid.n_y + 1):
            for i in range(grid.n_x + 1):
                f.write(f"{_fmt(xs[i])},{_fmt(ys[j])},{_fmt(speed[i, j])}\n")
