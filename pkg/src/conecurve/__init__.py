"""Self-similar curvature-flow and inverse-curvature-flow curves on the
2-dimensional light cone in Minkowski 3-space: reduced dynamical systems,
curve reconstruction, flow evolutions, closed-form solitons, and a CLI."""

from .minkowski import (
    CausalClass,
    Frame,
    FrameCheck,
    SampledCurve,
    AnalyticCurve,
    causal_classify,
    curvature_arbitrary,
    curvature_from_derivatives,
    frame_validate,
    lorentz_cross,
    lorentz_inner,
    E1,
    E2,
    E3,
)
from .ode import (
    DenseTrajectory,
    Event,
    IntegratorConfig,
    StopReason,
    TwoSidedTrajectory,
    integrate,
    integrate_two_sided,
    locate_events,
)
from .reduced import (
    ConstraintClass,
    FixedPointReport,
    FlowKind,
    FlowParams,
    ReducedState,
    VectorClass,
    cf_field,
    classify_initial,
    conserved_residuals,
    constraint_value,
    fixed_points,
    icf_field,
    rhs_cf,
    rhs_icf,
    sample_state,
    trivial_solution_check,
)
from .cone import (
    ConicKind,
    ConicSpec,
    CurveSample,
    IcfComponent,
    PolarState,
    associated_Y,
    conic_generator,
    initial_polar_from_reduced,
    polar_rhs,
    frame_rhs,
    reconstruct_curve,
    reconstruct_curve_frame,
    reduced_from_curve,
    split_icf_components,
)
from .evolution import (
    HomothetyFlow,
    IsometryFamily,
    cf_icf_duality,
    evolve_self_similar,
    homothety_evolve,
    homothety_flow,
    isometry_family,
    verify_flow_equation,
)
from .solitons import (
    LightlikeSolitonParams,
    eta_tilde,
    soliton_curves,
    tau_tilde,
    x3_antiderivative,
    x3_tilde,
)

__version__ = "0.1.0"
