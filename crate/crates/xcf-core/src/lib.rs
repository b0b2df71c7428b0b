//! Cross curvature flow of rotationally symmetric metrics on the solid
//! torus D^2 x S^1.
//!
//! A diagonal metric G = f^2 dmu^2 + g^2 dlambda^2 + h^2 dr^2 with radial
//! components f, g, h evolves under cross curvature flow with Dirichlet
//! boundary data that scales like a homothetically shrinking-to-round
//! hyperbolic metric. The crate provides
//!
//! * [`geometry`](profile): the cell-centered radial grid, parity-aware
//!   differential operators, curvature evaluation, and core regularity
//!   validation;
//! * [`initial`]: the hyperbolic geodesic tube, the cusp collar, and the
//!   negatively curved boundary-value family on the solid torus;
//! * [`flow`]: explicit second-order time integration with adaptive
//!   stability-limited steps;
//! * [`diagnostics`]: a priori curvature bounds, the integral functional
//!   J and its monotonicity check, the curvature evolution equations as
//!   an independent oracle, and the transport identity;
//! * [`verify`]: the fixed verification scenarios with pinned grids and
//!   tolerances.
//!
//! Everything numeric is generic over the scalar type via [`Scalar`];
//! concrete `f64` aliases are exported below.

pub mod closed_form;
pub mod curvature;
pub mod diagnostics;
pub mod error;
pub mod flow;
pub mod grid;
pub mod initial;
pub mod profile;
pub mod scalar;
mod stencil;
pub mod verify;

pub use curvature::{
    core_slope, curvatures, curvatures_with_boundary, validate_smoothness, BoundaryValues,
    Component, CurvatureField, SmoothnessReport, DEFAULT_FLOOR,
};
pub use diagnostics::{
    alpha_rhs_forms, bbs_products, beta_gamma_integral, check_bounds, check_j_monotone,
    compute_j, core_evolution_rates, curvature_rhs_oracle, transport_residual_series,
    AlphaEvolutionTerms, BoundFlags, DiagnosticsRecord, EvolutionRates, DEFAULT_BOUND_TOL,
};
pub use error::{Result, XcfError};
pub use flow::{
    apply_ghost_cells, boundary_values, evolve, stable_dt, step, xcf_rhs, FlowConfig, FlowState,
    GhostedFields, Snapshot, XcfRhs,
};
pub use grid::{RadialGrid, MIN_CELLS};
pub use initial::{
    cusp_annulus, hyperbolic_tube, make_two_pi_metric, solve_kappa, two_pi_closed_form,
    validate_negative_curvature, CurvatureViolation, NegativeCurvatureReport, TwoPiParams,
};
pub use profile::{d_ds, scale_profile, MetricProfile, Topology};
pub use scalar::Scalar;
pub use stencil::{OuterGhost, Parity};

/// Concrete `f64` instantiations, the types the CLI and the verification
/// suite work with.
pub type RadialGrid64 = RadialGrid<f64>;
pub type MetricProfile64 = MetricProfile<f64>;
pub type CurvatureField64 = CurvatureField<f64>;
pub type FlowState64 = FlowState<f64>;
pub type FlowConfig64 = FlowConfig<f64>;
pub type Snapshot64 = Snapshot<f64>;
pub type DiagnosticsRecord64 = DiagnosticsRecord<f64>;
pub type TwoPiParams64 = TwoPiParams<f64>;
