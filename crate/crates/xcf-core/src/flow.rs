//! Explicit time integration of the cross curvature flow system
//!
//!     f_t = (f_s g_s / f g) f_ss = alpha gamma f,
//!     g_t = (f_s g_s / f g) g_ss = alpha beta  g,
//!     h_t = (f_ss g_ss / f g) h  = beta gamma  h,
//!
//! on the fixed r-grid, with homothetic Dirichlet data at r = 1 scaling
//! like (1 + 4t)^{1/4} and parity ghost cells at the core. The system is
//! strictly parabolic in f and g as long as alpha stays positive, which
//! bounds the stable explicit step by the usual diffusion limit.
//!
//! The gauge normalizes h(., 0) to the constant s0 and lets h evolve;
//! the h boundary condition is scaled by the same factor, so the boundary
//! datum reads h(1, t) = h(1, 0) (1 + 4t)^{1/4}.

use crate::curvature::{
    curvatures_impl, BoundaryValues, Component, CurvatureField, DEFAULT_FLOOR,
};
use crate::diagnostics::{
    bbs_products, beta_gamma_integral, check_bounds, compute_j, lagged_transport_residual,
    DiagnosticsRecord, DEFAULT_BOUND_TOL,
};
use crate::error::{Result, XcfError};
use crate::initial::validate_negative_curvature;
use crate::profile::{MetricProfile, Topology};
use crate::scalar::{from_usize, lit, to_f64, Scalar};
use crate::stencil::{ghost_extend, OuterGhost, Parity};

/// Flow state: the current profile, flow time, and constants frozen from
/// the initial data (boundary amplitudes and curvature extrema K0, L0).
#[derive(Debug, Clone)]
pub struct FlowState<S> {
    pub metric: MetricProfile<S>,
    pub t: S,
    /// Boundary values f(1, 0), g(1, 0), h(1, 0) of the initial metric.
    pub f_b0: S,
    pub g_b0: S,
    pub h_b0: S,
    /// Extrema of the initial curvature magnitudes.
    pub k0: S,
    pub l0: S,
}

/// Cubic extrapolation of the outermost four cells to r = 1.
fn boundary_extrapolate<S: Scalar>(v: &[S]) -> S {
    let n = v.len();
    let (y0, y1, y2, y3) = (v[n - 4], v[n - 3], v[n - 2], v[n - 1]);
    (lit::<S>(-5.0) * y0 + lit::<S>(21.0) * y1 - lit::<S>(35.0) * y2 + lit::<S>(35.0) * y3)
        / lit::<S>(16.0)
}

impl<S: Scalar> FlowState<S> {
    /// Starts a flow at t = 0 from a negatively curved solid-torus metric.
    ///
    /// Boundary amplitudes are read off the profile by extrapolating the
    /// outermost cells to r = 1; K0 and L0 come from the curvature check,
    /// which must pass for the flow to be inside its hypotheses.
    pub fn new(metric: MetricProfile<S>) -> Result<Self> {
        if metric.topology() != Topology::SolidTorus {
            return Err(XcfError::InvalidParam(
                "flow initial data must live on the solid torus (the cusp collar has no core)"
                    .into(),
            ));
        }
        let report = validate_negative_curvature(&metric)?;
        if let Some(v) = report.violation {
            return Err(XcfError::CurvatureSignViolation {
                which: v.component.name(),
                value: to_f64(v.value),
                location: crate::curvature::cell_location(metric.grid(), v.index),
            });
        }
        Ok(Self {
            f_b0: boundary_extrapolate(metric.f()),
            g_b0: boundary_extrapolate(metric.g()),
            h_b0: boundary_extrapolate(metric.h()),
            k0: report.k0,
            l0: report.l0,
            metric,
            t: S::zero(),
        })
    }
}

/// Dirichlet data at time t: the initial boundary values scaled by
/// (1 + 4t)^{1/4}, the trace of a homothetically evolving hyperbolic
/// metric.
pub fn boundary_values<S: Scalar>(state: &FlowState<S>, t: S) -> BoundaryValues<S> {
    let scale = (S::one() + lit::<S>(4.0) * t).powf(lit::<S>(0.25));
    BoundaryValues {
        f: state.f_b0 * scale,
        g: state.g_b0 * scale,
        h: state.h_b0 * scale,
    }
}

/// Metric fields extended by their ghost layers at the state's time:
/// parity reflection at the core, boundary-pinned extrapolation at r = 1.
/// Each vector has length n + 4 with cell 0 at index 2.
#[derive(Debug, Clone)]
pub struct GhostedFields<S> {
    pub f: Vec<S>,
    pub g: Vec<S>,
    pub h: Vec<S>,
}

pub fn apply_ghost_cells<S: Scalar>(state: &FlowState<S>) -> GhostedFields<S> {
    let bv = boundary_values(state, state.t);
    let m = &state.metric;
    GhostedFields {
        f: ghost_extend(m.f(), m.inner_ghost(Parity::Odd), OuterGhost::Dirichlet(bv.f)),
        g: ghost_extend(m.g(), m.inner_ghost(Parity::Even), OuterGhost::Dirichlet(bv.g)),
        h: ghost_extend(m.h(), m.inner_ghost(Parity::Even), OuterGhost::Dirichlet(bv.h)),
    }
}

/// Time derivatives of the three metric components.
#[derive(Debug, Clone)]
pub struct XcfRhs<S> {
    pub df: Vec<S>,
    pub dg: Vec<S>,
    pub dh: Vec<S>,
}

/// Integration controls. `floor` is the positivity floor under which a
/// metric component or the diffusion coefficient alpha counts as lost.
#[derive(Debug, Clone)]
pub struct FlowConfig<S> {
    /// Safety factor on the explicit diffusion limit, in (0, 1/2].
    pub cfl: S,
    pub t_end: S,
    /// Snapshot cadence in flow time, resolution independent.
    pub snapshot_every: S,
    pub max_steps: u64,
    pub floor: S,
}

impl<S: Scalar> FlowConfig<S> {
    pub fn new(t_end: S) -> Self {
        Self {
            cfl: lit(0.25),
            t_end,
            snapshot_every: t_end,
            max_steps: 20_000_000,
            floor: lit(DEFAULT_FLOOR),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let half = lit::<S>(0.5);
        if !(self.cfl > S::zero() && self.cfl <= half) {
            return Err(XcfError::InvalidConfig(format!(
                "cfl must lie in (0, 0.5], got {}",
                to_f64(self.cfl)
            )));
        }
        if !(self.t_end > S::zero()) {
            return Err(XcfError::InvalidConfig("t_end must be positive".into()));
        }
        if !(self.snapshot_every > S::zero()) {
            return Err(XcfError::InvalidConfig("snapshot_every must be positive".into()));
        }
        if self.max_steps == 0 {
            return Err(XcfError::InvalidConfig("max_steps must be positive".into()));
        }
        if !(self.floor > S::zero()) {
            return Err(XcfError::InvalidConfig("floor must be positive".into()));
        }
        Ok(())
    }
}

fn rhs_from<S: Scalar>(
    m: &MetricProfile<S>,
    bv: &BoundaryValues<S>,
    floor: S,
    t: S,
) -> Result<(XcfRhs<S>, CurvatureField<S>)> {
    let curv = curvatures_impl(m, Some(bv), floor)?;
    let min_alpha = curv.min_of(Component::Alpha);
    if min_alpha <= floor {
        return Err(XcfError::EllipticityLost {
            min_alpha: to_f64(min_alpha),
            floor: to_f64(floor),
            t: to_f64(t),
        });
    }
    let n = m.grid().n();
    let mut df = Vec::with_capacity(n);
    let mut dg = Vec::with_capacity(n);
    let mut dh = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b, g) = (curv.alpha[i], curv.beta[i], curv.gamma[i]);
        df.push(a * g * m.f()[i]);
        dg.push(a * b * m.g()[i]);
        dh.push(b * g * m.h()[i]);
    }
    Ok((XcfRhs { df, dg, dh }, curv))
}

/// Evaluates the flow right-hand side at the state's own time.
pub fn xcf_rhs<S: Scalar>(state: &FlowState<S>, floor: S) -> Result<XcfRhs<S>> {
    let bv = boundary_values(state, state.t);
    rhs_from(&state.metric, &bv, floor, state.t).map(|(rhs, _)| rhs)
}

fn advanced<S: Scalar>(
    m: &MetricProfile<S>,
    rhs: &XcfRhs<S>,
    dt: S,
    floor: S,
    t: S,
) -> Result<MetricProfile<S>> {
    let n = m.grid().n();
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        f.push(m.f()[i] + dt * rhs.df[i]);
        g.push(m.g()[i] + dt * rhs.dg[i]);
        h.push(m.h()[i] + dt * rhs.dh[i]);
    }
    for (name, v) in [("f", &f), ("g", &g), ("h", &h)] {
        for (i, &x) in v.iter().enumerate() {
            if !(x >= floor) {
                return Err(XcfError::PositivityLost {
                    field: name,
                    index: i,
                    value: to_f64(x),
                    t: to_f64(t),
                });
            }
        }
    }
    Ok(MetricProfile::from_parts_unchecked(
        m.grid().clone(),
        f,
        g,
        h,
        m.topology(),
    ))
}

fn stable_from<S: Scalar>(
    curv: &CurvatureField<S>,
    m: &MetricProfile<S>,
    cfg: &FlowConfig<S>,
) -> S {
    let dr = m.grid().dr();
    let min_hdr2 = m
        .h()
        .iter()
        .map(|&h| (h * dr) * (h * dr))
        .fold(S::infinity(), |a, b| a.min(b));
    let max_alpha = curv.max_of(Component::Alpha);
    cfg.cfl * min_hdr2 / (lit::<S>(2.0) * max_alpha)
}

/// Stability-limited explicit step: cfl * min (h dr)^2 / (2 max alpha),
/// the diffusion limit of the quasilinear operator alpha d^2/ds^2.
pub fn stable_dt<S: Scalar>(state: &FlowState<S>, cfg: &FlowConfig<S>) -> Result<S> {
    let bv = boundary_values(state, state.t);
    let curv = curvatures_impl(&state.metric, Some(&bv), cfg.floor)?;
    Ok(stable_from(&curv, &state.metric, cfg))
}

/// One explicit midpoint (second-order Runge-Kutta) step of size dt.
/// Boundary ghosts for the second stage are evaluated at the midpoint
/// time, keeping the boundary second order too. The caller is responsible
/// for dt not exceeding the stable step.
pub fn step<S: Scalar>(state: &FlowState<S>, dt: S, cfg: &FlowConfig<S>) -> Result<FlowState<S>> {
    let half = lit::<S>(0.5);
    let bv0 = boundary_values(state, state.t);
    let (k1, _) = rhs_from(&state.metric, &bv0, cfg.floor, state.t)?;
    let t_mid = state.t + half * dt;
    let mid = advanced(&state.metric, &k1, half * dt, cfg.floor, t_mid)?;
    let bv_mid = boundary_values(state, t_mid);
    let (k2, _) = rhs_from(&mid, &bv_mid, cfg.floor, t_mid)?;
    let metric = advanced(&state.metric, &k2, dt, cfg.floor, state.t + dt)?;
    Ok(FlowState {
        metric,
        t: state.t + dt,
        f_b0: state.f_b0,
        g_b0: state.g_b0,
        h_b0: state.h_b0,
        k0: state.k0,
        l0: state.l0,
    })
}

/// Everything emitted at one snapshot time.
#[derive(Debug, Clone)]
pub struct Snapshot<S> {
    pub record: DiagnosticsRecord<S>,
    pub profile: MetricProfile<S>,
    pub curvature: CurvatureField<S>,
}

fn emit_snapshot<S: Scalar>(
    state: &FlowState<S>,
    cfg: &FlowConfig<S>,
    history: &mut Vec<(S, S, S)>,
    sink: &mut impl FnMut(Snapshot<S>),
) -> Result<()> {
    let bv = boundary_values(state, state.t);
    let curv = curvatures_impl(&state.metric, Some(&bv), cfg.floor)?;
    let (_, s1) = state.metric.arclength();
    let j = compute_j(&state.metric, &curv)?;
    let quad = beta_gamma_integral(&state.metric, &curv);
    history.push((state.t, s1, quad));
    if history.len() > 3 {
        history.remove(0);
    }
    let transport_residual = lagged_transport_residual(history);
    let slope = crate::curvature::core_slope(&state.metric);
    let two_pi = lit::<S>(2.0) * S::PI();
    let (bbs_beta, bbs_gamma) = bbs_products(&state.metric, &curv, state.t);
    let record = DiagnosticsRecord {
        t: state.t,
        dt: stable_from(&curv, &state.metric, cfg),
        s1,
        alpha_min: curv.min_of(Component::Alpha),
        alpha_max: curv.max_of(Component::Alpha),
        beta_min: curv.min_of(Component::Beta),
        beta_max: curv.max_of(Component::Beta),
        gamma_min: curv.min_of(Component::Gamma),
        gamma_max: curv.max_of(Component::Gamma),
        j,
        transport_residual,
        core_slope_error: (slope - two_pi).abs(),
        bbs_beta,
        bbs_gamma,
        flags: check_bounds(&curv, state.t, state.k0, state.l0, lit(DEFAULT_BOUND_TOL)),
    };
    sink(Snapshot {
        record,
        profile: state.metric.clone(),
        curvature: curv,
    });
    Ok(())
}

/// Integrates to cfg.t_end, emitting a snapshot at t = 0, at every
/// multiple of the snapshot cadence, and at t_end. Deterministic: fixed
/// evaluation order, and clamped steps land on snapshot times exactly.
pub fn evolve<S: Scalar>(
    state: FlowState<S>,
    cfg: &FlowConfig<S>,
    mut sink: impl FnMut(Snapshot<S>),
) -> Result<FlowState<S>> {
    cfg.validate()?;
    let mut state = state;
    let mut history: Vec<(S, S, S)> = Vec::new();
    let mut steps: u64 = 0;
    let mut snap_idx: usize = 1;
    emit_snapshot(&state, cfg, &mut history, &mut sink)?;
    while state.t < cfg.t_end {
        // Next emission time: the first cadence multiple past t, capped
        // at t_end.
        let mut t_next = cfg.t_end;
        loop {
            let cand = from_usize::<S>(snap_idx) * cfg.snapshot_every;
            if cand <= state.t {
                snap_idx += 1;
                continue;
            }
            if cand < cfg.t_end {
                t_next = cand;
            }
            break;
        }
        loop {
            steps += 1;
            if steps > cfg.max_steps {
                return Err(XcfError::MaxStepsExceeded {
                    max_steps: cfg.max_steps,
                    t: to_f64(state.t),
                    t_end: to_f64(cfg.t_end),
                });
            }
            let bv = boundary_values(&state, state.t);
            let (_, curv) = rhs_from(&state.metric, &bv, cfg.floor, state.t)?;
            let dt_stable = stable_from(&curv, &state.metric, cfg);
            let gap = t_next - state.t;
            if dt_stable >= gap {
                state = step(&state, gap, cfg)?;
                state.t = t_next; // land exactly, immune to rounding drift
                break;
            }
            state = step(&state, dt_stable, cfg)?;
        }
        emit_snapshot(&state, cfg, &mut history, &mut sink)?;
    }
    Ok(state)
}
