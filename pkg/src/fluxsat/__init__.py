"""Subsolution constructions, waiting-time bounds and a radial finite-volume
solver for the relativistic and speed-limited porous medium equations."""

from .bounds import (
    ScalingStudyResult,
    WaitingTimeStudyConfig,
    estimate_growth_coefficient,
    lower_bound_T_ell,
    scaling_study,
    upper_bound_T_u,
    waiting_time_constant,
)
from .errors import (
    CFLViolationError,
    ConfigurationError,
    HorizonExceededError,
    LifetimeExceededError,
    SolverFailureError,
    SynthesisError,
)
from .model import (
    ModelFamily,
    ModelKind,
    flux_rel_pm,
    flux_slpm,
    front_speed_bound,
    radial_flux,
    recession_phi,
    relativistic_pm,
    speed_limited_pm,
)
from .solver import (
    Bump,
    FrontPowerLaw,
    ObserverSpec,
    RadialGrid,
    RadialSolver,
    RadialState,
    RampPowerLaw,
    SubsolutionSnapshot,
    Trace,
    WaitingTimeReport,
    ZeroDatum,
    support_radius,
)
from .subsolutions import (
    MSubParams,
    MValidity,
    RadialSubsolution,
    RelSubParams,
    bulk_gamma_requirement,
    eval_M_sub,
    eval_rel_sub,
    front_radius_rel,
    front_speed_rel,
    gamma0,
    m_sub_radial,
    rel_plus_level,
    rel_sub_radial,
    synthesize_M_params,
    synthesize_rel_params,
    validate_M_params,
)
from .verify import (
    CertificationReport,
    ComparisonReport,
    bulk_residual_M,
    bulk_residual_rel,
    certify_m_family,
    certify_rel_family,
    comparison_test,
    jump_check_rel,
)

__version__ = "0.1.0"
