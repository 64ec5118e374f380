"""Symmetric positive-definite 2x2 diffusion tensors.

A tensor couples the two gradient directions through the off-diagonal
entry ``k_c``; it is what makes the diffusion anisotropic with respect
to the grid.  All tensors here are nondimensional: the coefficient along
the preferred direction is normalized to 1 and the cross-direction
coefficient is 1/ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateDirectionError, TensorError

__all__ = [
    "DiffusionTensor",
    "tensor_from_angle",
    "tensor_from_hall",
    "tensor_from_direction",
]


@dataclass(frozen=True)
class DiffusionTensor:
    """2x2 SPD coefficient matrix [[k_x, k_c], [k_c, k_y]].

    ``delta`` is the determinant k_x*k_y - k_c**2, recomputed at
    construction and cached; positivity of delta together with k_x > 0
    is exactly positive definiteness.
    """

    k_x: float
    k_y: float
    k_c: float
    delta: float = field(init=False)

    def __post_init__(self):
        for name in ("k_x", "k_y", "k_c"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise TensorError(f"{name} must be finite, got {v!r}")
        if self.k_x <= 0.0 or self.k_y <= 0.0:
            raise TensorError(
                f"diagonal entries must be positive, got k_x={self.k_x!r}, k_y={self.k_y!r}"
            )
        delta = self.k_x * self.k_y - self.k_c**2
        if delta <= 0.0:
            raise TensorError(
                f"tensor is not positive definite: delta={delta!r} "
                f"(k_x={self.k_x!r}, k_y={self.k_y!r}, k_c={self.k_c!r})"
            )
        object.__setattr__(self, "delta", delta)

    @property
    def trace(self) -> float:
        return self.k_x + self.k_y

    def as_matrix(self):
        import numpy as np

        return np.array([[self.k_x, self.k_c], [self.k_c, self.k_y]])


def tensor_from_angle(theta: float, ratio: float) -> DiffusionTensor:
    """Tensor with unit coefficient along the direction ``theta`` and
    1/ratio across it.

    Sign convention: theta = pi/4 gives k_c > 0.  Componentwise,

        k_x = cos^2(theta) + sin^2(theta)/ratio
        k_y = sin^2(theta) + cos^2(theta)/ratio
        k_c = sin(theta)*cos(theta)*(1 - 1/ratio)
    """
    if not math.isfinite(theta) or not math.isfinite(ratio):
        raise TensorError(f"theta and ratio must be finite, got {theta!r}, {ratio!r}")
    if ratio < 1.0:
        raise TensorError(f"ratio must be >= 1, got {ratio!r}")
    c, s = math.cos(theta), math.sin(theta)
    eps = 1.0 / ratio
    return DiffusionTensor(
        k_x=c * c + s * s * eps,
        k_y=s * s + c * c * eps,
        k_c=s * c * (1.0 - eps),
    )


def tensor_from_hall(omega_x: float, omega_y: float) -> DiffusionTensor:
    """Tensor from the two in-plane components of a directional Hall
    parameter; the confinement ratio comes out as 1 + |omega|^2."""
    if not math.isfinite(omega_x) or not math.isfinite(omega_y):
        raise TensorError(f"omega must be finite, got ({omega_x!r}, {omega_y!r})")
    denom = 1.0 + omega_x**2 + omega_y**2
    return DiffusionTensor(
        k_x=(1.0 + omega_x**2) / denom,
        k_y=(1.0 + omega_y**2) / denom,
        k_c=omega_x * omega_y / denom,
    )


def tensor_from_direction(b_x: float, b_y: float, ratio: float) -> DiffusionTensor:
    """Tensor aligned with the direction (b_x, b_y); invariant under
    positive rescaling of the direction vector."""
    if b_x == 0.0 and b_y == 0.0:
        raise DegenerateDirectionError("direction vector must be nonzero")
    return tensor_from_angle(math.atan2(b_y, b_x), ratio)
