"""Exception types shared across the solver and analysis modules."""


class HyperdiffError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(HyperdiffError):
    """Invalid grid, case, or solver configuration."""


class TensorError(HyperdiffError):
    """Diffusion tensor construction failed (non-SPD or bad inputs)."""


class DegenerateDirectionError(TensorError):
    """A zero direction vector was given where an orientation is required."""


class SingularSourceError(HyperdiffError):
    """The implicit 2x2 gradient-variable solve is singular for this alpha_s."""

    def __init__(self, alpha_s: float):
        self.alpha_s = alpha_s
        super().__init__(
            f"implicit source solve is singular at alpha_s={alpha_s!r} "
            "(alpha_s coincides with a solvability threshold)"
        )


class SingularOperatorError(HyperdiffError):
    """The minimal-mesh interior entry vanishes; the operator is not invertible."""


class NoRealRootsError(HyperdiffError):
    """The threshold quadratic has no real roots for the requested coefficient."""


class DivergenceError(HyperdiffError):
    """A pseudo-time march produced a non-finite value."""

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"non-finite value produced at step {step}")
