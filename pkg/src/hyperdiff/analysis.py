"""Discrete-maximum-principle analysis of the relaxed two-stage scheme.

Everything here is a pure function of a diffusion tensor and the step
parameters (relaxation parameter ``alpha_s``, pseudo-time step ``dt``,
mesh size ``h``).  The module answers three questions:

* for which ``alpha_s`` is the implicit gradient-variable solve
  nonsingular (``alpha_thresholds``),
* for which ``alpha_s`` does the composed one-variable update satisfy
  the discrete maximum principle (``dmp_quadratic_roots``,
  ``dmp_interval``, ``dmp_holds``), and
* what does the composed 5x5 update stencil actually look like
  (``effective_stencil``, ``monotonicity_report``), including its fold
  onto the smallest possible mesh for an independent matrix-based DMP
  test (``minimal_mesh_matrices``, ``ciarlet_check``).

Sign convention: the interval analysis is carried out for negative
``alpha_s``; a solver running with ``alpha_s > 0`` is assessed through
the mapped value ``-|alpha_s|`` (see ``dmp_holds``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NoRealRootsError, SingularOperatorError
from .tensor import DiffusionTensor

__all__ = [
    "ThresholdPair",
    "DmpInterval",
    "StencilCoeffs",
    "MonotonicityReport",
    "MinimalMeshOperator",
    "alpha_thresholds",
    "dt_bound",
    "dmp_quadratic",
    "dmp_quadratic_roots",
    "dmp_interval",
    "dmp_holds",
    "effective_stencil",
    "monotonicity_report",
    "minimal_mesh_matrices",
    "ciarlet_check",
    "threshold_table",
]

# Offsets of the 13 structurally nonzero entries of the composed stencil.
STENCIL_OFFSETS = (
    (0, 0),
    (1, 0), (-1, 0), (0, 1), (0, -1),
    (2, 0), (-2, 0), (0, 2), (0, -2),
    (1, 1), (-1, -1), (1, -1), (-1, 1),
)


@dataclass(frozen=True)
class ThresholdPair:
    """Roots of the implicit-solve determinant, ordered alpha_minus <=
    alpha_plus.  Both are negative; the positive-parameter convention
    uses their magnitudes."""

    alpha_minus: float
    alpha_plus: float

    @property
    def magnitudes(self) -> tuple[float, float]:
        """(|alpha_plus|, |alpha_minus|), ascending."""
        return (-self.alpha_plus, -self.alpha_minus)


@dataclass(frozen=True)
class DmpInterval:
    """Admissible parameter set for the DMP, as up to two closed
    intervals on the negative axis.

    ``outer`` spans from the lower quadratic root up to alpha_minus,
    ``inner`` from alpha_plus up to the upper quadratic root; either is
    ``None`` when its endpoints are out of order (the branch is empty).
    """

    outer: tuple[float, float] | None
    inner: tuple[float, float] | None

    @property
    def outer_magnitudes(self) -> tuple[float, float] | None:
        if self.outer is None:
            return None
        lo, hi = self.outer
        return (-hi, -lo)

    @property
    def inner_magnitudes(self) -> tuple[float, float] | None:
        if self.inner is None:
            return None
        lo, hi = self.inner
        return (-hi, -lo)

    def contains(self, alpha: float) -> bool:
        """Closed-interval membership."""
        for iv in (self.outer, self.inner):
            if iv is not None and iv[0] <= alpha <= iv[1]:
                return True
        return False


def alpha_thresholds(tensor: DiffusionTensor, dt: float) -> ThresholdPair:
    """Parameter values at which the implicit 2x2 gradient solve is
    singular:

        alpha = (-(k_x + k_y) +/- sqrt((k_x - k_y)^2 + 4 k_c^2)) / (2 dt)

    The determinant of the implicit solve is positive outside the open
    interval (alpha_minus, alpha_plus) and negative inside it.
    """
    if dt <= 0.0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    tr = tensor.trace
    root = math.sqrt((tensor.k_x - tensor.k_y) ** 2 + 4.0 * tensor.k_c**2)
    return ThresholdPair(
        alpha_minus=(-tr - root) / (2.0 * dt),
        alpha_plus=(-tr + root) / (2.0 * dt),
    )


def dt_bound(tensor: DiffusionTensor) -> float:
    """Largest pseudo-time step for which the DMP parameter set is
    guaranteed nonempty:

        dt <= (tr^2 - tr * sqrt(tr^2 - 4 delta)) / 2
    """
    tr = tensor.trace
    disc = max(tr * tr - 4.0 * tensor.delta, 0.0)
    return (tr * tr - tr * math.sqrt(disc)) / 2.0


def dmp_quadratic(tensor: DiffusionTensor, dt: float, c: float) -> tuple[float, float, float]:
    """Coefficients (a, b, q0) of the quadratic in alpha whose
    nonpositivity is the center-entry DMP condition at CFL number
    c = dt/h:

        a alpha^2 + b alpha + q0,
        a = 4 dt^2 + c tr dt,  b = 4 tr dt + 2 c delta,  q0 = 4 delta.
    """
    tr, delta = tensor.trace, tensor.delta
    return (4.0 * dt * dt + c * tr * dt, 4.0 * tr * dt + 2.0 * c * delta, 4.0 * delta)


def dmp_quadratic_roots(tensor: DiffusionTensor, dt: float, c: float) -> tuple[float, float]:
    """The two real roots of the DMP quadratic, ordered ascending.

    At c = 0 the roots coincide with ``alpha_thresholds``.  The
    discriminant simplifies to 16 dt^2 (tr^2 - 4 delta) + 4 c^2 delta^2,
    which is nonnegative for every c >= 0; it is evaluated in that form
    to avoid cancellation.  Roots are extracted with the sign-aware
    formula q = -(b + sign(b) sqrt(D))/2, roots q/a and q0/q, because
    the two roots differ by many orders of magnitude for strong
    anisotropy and the textbook formula would cancel catastrophically.
    """
    if dt <= 0.0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    if c < 0.0:
        raise ConfigError(f"CFL number must be nonnegative, got {c!r}")
    a, b, q0 = dmp_quadratic(tensor, dt, c)
    if a <= 0.0:
        raise ConfigError(f"quadratic leading coefficient must be positive, got {a!r}")
    tr, delta = tensor.trace, tensor.delta
    disc = 16.0 * dt * dt * max(tr * tr - 4.0 * delta, 0.0) + 4.0 * c * c * delta * delta
    if disc < 0.0:
        raise NoRealRootsError(f"negative discriminant {disc!r} at c={c!r}")
    sqrt_d = math.sqrt(disc)
    q = -(b + math.copysign(sqrt_d, b)) / 2.0 if b != 0.0 else -sqrt_d / 2.0
    if q == 0.0:
        # b == 0 and disc == 0: double root at zero.
        return (0.0, 0.0)
    r1, r2 = q / a, q0 / q
    return (min(r1, r2), max(r1, r2))


def dmp_interval(tensor: DiffusionTensor, dt: float, c: float) -> DmpInterval:
    """Admissible negative-alpha set: [root_lo, alpha_minus] united with
    [alpha_plus, root_hi], each branch kept only when its endpoints are
    ordered."""
    root_lo, root_hi = dmp_quadratic_roots(tensor, dt, c)
    thr = alpha_thresholds(tensor, dt)
    outer = (root_lo, thr.alpha_minus) if root_lo <= thr.alpha_minus else None
    inner = (thr.alpha_plus, root_hi) if thr.alpha_plus <= root_hi else None
    return DmpInterval(outer=outer, inner=inner)


def dmp_holds(alpha_s: float, tensor: DiffusionTensor, dt: float, h: float) -> bool:
    """Whether a solver run with parameter ``alpha_s`` (either sign) is
    predicted to satisfy the DMP on a square mesh of size ``h``.

    Membership is endpoint-inclusive; note the implicit solve itself is
    singular exactly at the threshold endpoints, so a solver must stay
    strictly inside in practice.
    """
    if h <= 0.0:
        raise ConfigError(f"h must be positive, got {h!r}")
    return dmp_interval(tensor, dt, dt / h).contains(-abs(alpha_s))


class StencilCoeffs:
    """Composed one-variable update stencil on a square mesh, as a 5x5
    coefficient array over offsets (di, dj) in [-2, 2]^2."""

    def __init__(self, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (5, 5):
            raise ValueError(f"expected a 5x5 array, got {coeffs.shape}")
        self.coeffs = coeffs

    def coeff(self, di: int, dj: int) -> float:
        return float(self.coeffs[di + 2, dj + 2])

    def total(self) -> float:
        return float(self.coeffs.sum())

    def items(self):
        for di in range(-2, 3):
            for dj in range(-2, 3):
                yield (di, dj), float(self.coeffs[di + 2, dj + 2])


@dataclass(frozen=True)
class MonotonicityReport:
    is_monotone: bool
    min_coefficient: float
    cross_magnitude: float


def _betas(tensor: DiffusionTensor, alpha_s: float, dt: float) -> tuple[float, float, float, float]:
    """(beta_x, beta_y, beta_c, det) of the implicit gradient solve."""
    scale = alpha_s * dt / tensor.delta
    bx, by, bc = tensor.k_x * scale, tensor.k_y * scale, tensor.k_c * scale
    det = (1.0 + bx) * (1.0 + by) - bc * bc
    return bx, by, bc, det


def effective_stencil(
    tensor: DiffusionTensor, alpha_s: float, dt: float, h: float
) -> StencilCoeffs:
    """Coefficients of the composed update of the main variable when the
    gradient variables start from zero (square mesh).

    center          1 - 2 dt/h - ((1+beta_x) + (1+beta_y)) / (2|B|) (dt/h)^2 alpha_s
    first neighbors dt/(2h)
    second (x)      (1+beta_x)/|B| (dt/(2h))^2 alpha_s   (likewise y)
    diagonals       +/- beta_c/(2|B|) (dt/h)^2 alpha_s
                    (+ on (+1,+1)/(-1,-1), - on (+1,-1)/(-1,+1))

    The coefficients sum to 1 identically.
    """
    if h <= 0.0 or dt <= 0.0:
        raise ConfigError(f"dt and h must be positive, got dt={dt!r}, h={h!r}")
    bx, by, bc, det = _betas(tensor, alpha_s, dt)
    if det == 0.0:
        raise SingularOperatorError(
            f"implicit solve determinant vanishes at alpha_s={alpha_s!r}"
        )
    cfl = dt / h
    half = 0.5 * cfl
    second_x = (1.0 + bx) / det * half * half * alpha_s
    second_y = (1.0 + by) / det * half * half * alpha_s
    diag = bc / (2.0 * det) * cfl * cfl * alpha_s

    a = np.zeros((5, 5))
    a[2, 2] = 1.0 - 2.0 * cfl - ((1.0 + bx) + (1.0 + by)) / (2.0 * det) * cfl * cfl * alpha_s
    a[1, 2] = a[3, 2] = a[2, 1] = a[2, 3] = half
    a[0, 2] = a[4, 2] = second_x
    a[2, 0] = a[2, 4] = second_y
    a[3, 3] = a[1, 1] = diag
    a[3, 1] = a[1, 3] = -diag
    return StencilCoeffs(a)


def monotonicity_report(coeffs: StencilCoeffs) -> MonotonicityReport:
    """A stencil is monotone when every coefficient is nonnegative; the
    equal-and-opposite diagonal pair makes that impossible for any
    nonzero alpha_s with a nonzero cross coefficient, but the pair
    shrinks quadratically as alpha_s -> 0."""
    diagonals = [coeffs.coeff(1, 1), coeffs.coeff(-1, -1), coeffs.coeff(1, -1), coeffs.coeff(-1, 1)]
    return MonotonicityReport(
        is_monotone=bool(coeffs.coeffs.min() >= 0.0),
        min_coefficient=float(coeffs.coeffs.min()),
        cross_magnitude=max(abs(d) for d in diagonals),
    )


# Boundary-entry ordering of the minimal-mesh operator.
MINIMAL_MESH_ORDER = (
    (-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1),
)


@dataclass(frozen=True)
class MinimalMeshOperator:
    """Steady-update operator folded onto a 3x3-node mesh (one interior
    node, eight boundary nodes).

    ``a_center`` is the single interior-block entry; ``a_boundary``
    holds the eight boundary couplings in ``MINIMAL_MESH_ORDER``.  The
    axis entries absorb the out-of-mesh second-neighbor coefficients of
    the 5x5 stencil (clamped onto the adjacent boundary node); the
    corner entries are the signed diagonal pair.  ``dt`` and ``h`` are
    carried so the entries can be interpreted without the inputs.
    """

    a_center: float
    a_boundary: np.ndarray
    dt: float
    h: float


def minimal_mesh_matrices(
    tensor: DiffusionTensor, alpha_s: float, dt: float, h: float
) -> MinimalMeshOperator:
    """Fold the effective stencil onto the 3x3 mesh: subtract the
    identity from the center and add each second-neighbor coefficient to
    the axis boundary node it sits behind."""
    st = effective_stencil(tensor, alpha_s, dt, h)
    folded = {
        (-1, 0): st.coeff(-1, 0) + st.coeff(-2, 0),
        (1, 0): st.coeff(1, 0) + st.coeff(2, 0),
        (0, -1): st.coeff(0, -1) + st.coeff(0, -2),
        (0, 1): st.coeff(0, 1) + st.coeff(0, 2),
        (-1, -1): st.coeff(-1, -1),
        (1, 1): st.coeff(1, 1),
        (-1, 1): st.coeff(-1, 1),
        (1, -1): st.coeff(1, -1),
    }
    boundary = np.array([folded[off] for off in MINIMAL_MESH_ORDER])
    return MinimalMeshOperator(
        a_center=st.coeff(0, 0) - 1.0, a_boundary=boundary, dt=dt, h=h
    )


def ciarlet_check(op: MinimalMeshOperator) -> bool:
    """Matrix-side DMP test on the minimal mesh.

    For the single-interior-node operator the inverse blocks are
    G = 1/a_center and G_boundary = -a_boundary/a_center, and the test
    is: G nonnegative, boundary weights summing to at most one, and a
    positive implicit-solve determinant.  The corner couplings come in
    an equal-and-opposite pair by construction, so they cancel from the
    weight sum and cannot be sign-constrained individually; their
    product with the axis couplings recovers the determinant sign, which
    is the remaining solvability requirement.
    """
    if op.a_center == 0.0:
        raise SingularOperatorError("interior entry vanishes; operator not invertible")
    if op.a_center < 0.0:
        return False
    weights = -op.a_boundary / op.a_center
    if weights.sum() > 1.0 + 1e-12:
        return False
    base = op.dt / (2.0 * op.h)
    r_x = op.a_boundary[1] - base  # folded x second-neighbor part
    r_y = op.a_boundary[3] - base  # folded y second-neighbor part
    corner = op.a_boundary[0]
    # r_x * r_y - corner^2/4 has the sign of the implicit-solve determinant.
    return r_x * r_y - 0.25 * corner * corner > 0.0


def threshold_table(
    tensor: DiffusionTensor, dt: float, c_values
) -> list[tuple[float, float, float]]:
    """Rows (c, h, |upper root|) for a sweep of CFL numbers, h = dt/c."""
    rows = []
    for c in c_values:
        if c > 0.0:
            h = dt / c
            _, hi = dmp_quadratic_roots(tensor, dt, c)
        else:
            h = math.inf
            hi = alpha_thresholds(tensor, dt).alpha_plus
        rows.append((float(c), float(h), abs(hi)))
    return rows
