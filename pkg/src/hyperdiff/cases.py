"""Benchmark problem setups on the unit square.

Case A drives a potential difference between the left (phi=1) and right
(phi=0) boundaries with impermeable top/bottom walls.  Cases B and C pin
phi=1 on a small centered square and phi=0 on the whole outer boundary,
with the coefficient field inclined at pi/4 and pi/6 respectively.
Case D reuses the B geometry but derives a node-by-node tensor from a
cusped field with a null at the domain center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .mesh import GridSpec, NodeRole
from .tensor import DiffusionTensor, tensor_from_direction

__all__ = [
    "TensorField",
    "CaseSpec",
    "case_a",
    "case_b",
    "case_c",
    "case_d",
    "cusp_field",
    "uniform_dirichlet_case",
    "validate_case",
]

INNER_SQUARE_HALF_WIDTH = 0.1


@dataclass
class TensorField:
    """Per-node tensor components (arrays shaped like the grid)."""

    k_x: np.ndarray
    k_y: np.ndarray
    k_c: np.ndarray
    delta: np.ndarray


@dataclass
class CaseSpec:
    """Grid, coefficient field, and boundary/fixed-node specification
    for one problem.  Exactly one of ``tensor`` (uniform) or
    ``tensor_map`` (per-node) is set.  ``pinned`` holds the pinned phi
    value at DIRICHLET/FIXED nodes and NaN elsewhere."""

    grid: GridSpec
    name: str
    roles: np.ndarray
    pinned: np.ndarray
    bounds: tuple[float, float]
    tensor: DiffusionTensor | None = None
    tensor_map: TensorField | None = None

    def k_fields(self):
        """(k_x, k_y, k_c, delta) as scalars (uniform) or arrays."""
        if self.tensor is not None:
            t = self.tensor
            return t.k_x, t.k_y, t.k_c, t.delta
        tm = self.tensor_map
        return tm.k_x, tm.k_y, tm.k_c, tm.delta

    def pinned_mask(self) -> np.ndarray:
        return ~np.isnan(self.pinned)


def _empty_roles(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    roles = np.full(grid.shape, NodeRole.INTERIOR, dtype=np.int8)
    pinned = np.full(grid.shape, np.nan)
    return roles, pinned


def case_a(grid: GridSpec, ratio: float, theta: float = math.pi / 4) -> CaseSpec:
    """Left boundary phi=1, right boundary phi=0 (corners included),
    impermeable top and bottom walls; uniform tensor at angle ``theta``."""
    from .tensor import tensor_from_angle

    roles, pinned = _empty_roles(grid)
    roles[0, :] = NodeRole.DIRICHLET
    pinned[0, :] = 1.0
    roles[-1, :] = NodeRole.DIRICHLET
    pinned[-1, :] = 0.0
    roles[1:-1, 0] = NodeRole.WALL
    roles[1:-1, -1] = NodeRole.WALL
    return CaseSpec(
        grid=grid,
        name="A",
        roles=roles,
        pinned=pinned,
        bounds=(0.0, 1.0),
        tensor=tensor_from_angle(theta, ratio),
    )


def _inner_square_case(grid: GridSpec, tensor, tensor_map, name: str) -> CaseSpec:
    roles, pinned = _empty_roles(grid)
    roles[0, :] = roles[-1, :] = NodeRole.DIRICHLET
    roles[:, 0] = roles[:, -1] = NodeRole.DIRICHLET
    pinned[0, :] = pinned[-1, :] = 0.0
    pinned[:, 0] = pinned[:, -1] = 0.0

    xs, ys = grid.x_nodes(), grid.y_nodes()
    half = INNER_SQUARE_HALF_WIDTH + 1e-12  # rounding guard on node hits
    in_square = (np.abs(xs[:, None] - 0.5) <= half) & (np.abs(ys[None, :] - 0.5) <= half)
    in_square &= roles == NodeRole.INTERIOR
    if not in_square.any():
        raise ConfigError(
            f"grid {grid.n_x}x{grid.n_y} too coarse: inner square holds no node"
        )
    roles[in_square] = NodeRole.FIXED
    pinned[in_square] = 1.0
    return CaseSpec(
        grid=grid,
        name=name,
        roles=roles,
        pinned=pinned,
        bounds=(0.0, 1.0),
        tensor=tensor,
        tensor_map=tensor_map,
    )


def case_b(grid: GridSpec, ratio: float, theta: float = math.pi / 4) -> CaseSpec:
    """Centered square pinned to 1 inside an outer boundary pinned to 0."""
    from .tensor import tensor_from_angle

    return _inner_square_case(grid, tensor_from_angle(theta, ratio), None, "B")


def case_c(grid: GridSpec, ratio: float, theta: float = math.pi / 6) -> CaseSpec:
    """Same geometry as case B with the coefficient field at pi/6."""
    from .tensor import tensor_from_angle

    return _inner_square_case(grid, tensor_from_angle(theta, ratio), None, "C")


def cusp_field(x: float, y: float, ratio: float) -> tuple[float, float]:
    """In-plane field of the cusped geometry, the curl of the scalar
    potential ratio*((x-0.5)^2 - (y-0.5)^2):

        B_x = -2 ratio (y - 0.5),  B_y = -2 ratio (x - 0.5).
    """
    return (-2.0 * ratio * (y - 0.5), -2.0 * ratio * (x - 0.5))


def case_d(grid: GridSpec, ratio: float) -> CaseSpec:
    """Case-B geometry with a per-node tensor aligned to the cusped
    field; nodes where the field magnitude is negligible fall back to
    the identity tensor (anisotropy has no direction at the null)."""
    shape = grid.shape
    k_x = np.empty(shape)
    k_y = np.empty(shape)
    k_c = np.empty(shape)
    delta = np.empty(shape)
    xs, ys = grid.x_nodes(), grid.y_nodes()
    null_scale = 1e-12 * ratio
    for i in range(shape[0]):
        for j in range(shape[1]):
            bx, by = cusp_field(xs[i], ys[j], ratio)
            if math.hypot(bx, by) < null_scale:
                t = DiffusionTensor(1.0, 1.0, 0.0)
            else:
                t = tensor_from_direction(bx, by, ratio)
            k_x[i, j], k_y[i, j], k_c[i, j], delta[i, j] = t.k_x, t.k_y, t.k_c, t.delta
    tm = TensorField(k_x=k_x, k_y=k_y, k_c=k_c, delta=delta)
    case = _inner_square_case(grid, None, tm, "D")
    return case


def uniform_dirichlet_case(
    grid: GridSpec,
    tensor: DiffusionTensor,
    boundary_phi: np.ndarray,
    name: str = "dirichlet",
    bounds: tuple[float, float] | None = None,
) -> CaseSpec:
    """All-boundary Dirichlet problem pinning phi to ``boundary_phi``
    (a full grid-shaped array; only its boundary entries are used)."""
    roles, pinned = _empty_roles(grid)
    edge = np.zeros(grid.shape, dtype=bool)
    edge[0, :] = edge[-1, :] = True
    edge[:, 0] = edge[:, -1] = True
    roles[edge] = NodeRole.DIRICHLET
    pinned[edge] = boundary_phi[edge]
    if bounds is None:
        bounds = (float(pinned[edge].min()), float(pinned[edge].max()))
    return CaseSpec(
        grid=grid, name=name, roles=roles, pinned=pinned, bounds=bounds, tensor=tensor
    )


def validate_case(case: CaseSpec) -> None:
    """Raise ConfigError unless the case is internally consistent:
    roles cover the boundary, pinned values sit exactly on pinned roles
    and within bounds, and every tensor is SPD."""
    grid = case.grid
    if case.roles.shape != grid.shape or case.pinned.shape != grid.shape:
        raise ConfigError("roles/pinned arrays do not match the grid")
    if (case.tensor is None) == (case.tensor_map is None):
        raise ConfigError("exactly one of tensor and tensor_map must be set")

    edge = np.zeros(grid.shape, dtype=bool)
    edge[0, :] = edge[-1, :] = True
    edge[:, 0] = edge[:, -1] = True
    if (case.roles[edge] == NodeRole.INTERIOR).any():
        raise ConfigError("boundary nodes must all have non-interior roles")
    if (case.roles[~edge] == NodeRole.WALL).any():
        raise ConfigError("wall roles are only valid on the boundary")
    if (case.roles[~edge] == NodeRole.DIRICHLET).any():
        raise ConfigError("interior pinned nodes must use the FIXED role")

    pinned_roles = (case.roles == NodeRole.DIRICHLET) | (case.roles == NodeRole.FIXED)
    if not np.array_equal(case.pinned_mask(), pinned_roles):
        raise ConfigError("pinned values must be set exactly on DIRICHLET/FIXED nodes")
    lo, hi = case.bounds
    vals = case.pinned[pinned_roles]
    if vals.size and (vals.min() < lo or vals.max() > hi):
        raise ConfigError("pinned values fall outside the expected bounds")

    if case.tensor_map is not None:
        tm = case.tensor_map
        if not ((tm.k_x > 0).all() and (tm.k_y > 0).all() and (tm.delta > 0).all()):
            raise ConfigError("per-node tensor field contains a non-SPD entry")
        if not np.allclose(tm.delta, tm.k_x * tm.k_y - tm.k_c**2, rtol=0, atol=1e-15):
            raise ConfigError("tensor-field determinant cache is inconsistent")
