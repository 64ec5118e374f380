"""Hyperbolic relaxation solver for 2-D anisotropic diffusion, with a
discrete-maximum-principle (DMP) threshold analysis and a central-difference
baseline."""

from .analysis import (
    DmpInterval,
    MinimalMeshOperator,
    MonotonicityReport,
    StencilCoeffs,
    ThresholdPair,
    alpha_thresholds,
    ciarlet_check,
    dmp_holds,
    dmp_interval,
    dmp_quadratic_roots,
    dt_bound,
    effective_stencil,
    minimal_mesh_matrices,
    monotonicity_report,
    threshold_table,
)
from .cases import (
    CaseSpec,
    TensorField,
    case_a,
    case_b,
    case_c,
    case_d,
    cusp_field,
    uniform_dirichlet_case,
    validate_case,
)
from .central import central_dt_limit, central_solve_steady, central_step
from .errors import (
    ConfigError,
    DegenerateDirectionError,
    DivergenceError,
    HyperdiffError,
    NoRealRootsError,
    SingularOperatorError,
    SingularSourceError,
    TensorError,
)
from .hyper import (
    ConvergenceHistory,
    FluxField,
    SolverConfig,
    SourceSolve,
    flux_field,
    hyper_step,
    initial_state,
    solve_steady,
    source_matrices,
)
from .mesh import (
    DmpReport,
    FieldState,
    GridSpec,
    NodeRole,
    dmp_report,
    profile_along_midline,
    write_field_csv,
    write_profile_csv,
    write_speed_csv,
)
from .tensor import (
    DiffusionTensor,
    tensor_from_angle,
    tensor_from_direction,
    tensor_from_hall,
)

__version__ = "0.1.0"
