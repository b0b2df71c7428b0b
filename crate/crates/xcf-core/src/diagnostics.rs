//! Runtime monitors for the flow: a priori curvature bounds, the integral
//! functional J, the curvature evolution equations as an independent
//! oracle, the arclength transport identity, and derivative-growth
//! products.

use crate::curvature::{
    curvature_parts, curvatures_impl, BoundaryValues, Component, CurvatureField, DEFAULT_FLOOR,
};
use crate::error::{Result, XcfError};
use crate::profile::{d_ds_with, MetricProfile, Topology};
use crate::scalar::{lit, Scalar};
use crate::stencil::{OuterGhost, Parity};

/// Default relative slack on the maximum-principle bound checks. The
/// bounds are exact only in the continuum; the slack absorbs O(dr^2)
/// discretization error, so violations beyond it indicate real bugs.
pub const DEFAULT_BOUND_TOL: f64 = 1e-2;

/// Outer-edge cells skipped when taking the s-derivative of a curvature
/// field. The metric's boundary ghosts leave an O(dr^2) truncation kink
/// on the outermost two curvature cells; one more centered difference
/// spreads it a cell inward and amplifies it by 1/dr.
pub const EDGE_SKIP_FIRST_DERIV: usize = 3;

/// Outer-edge cells skipped when comparing against the evolution oracle,
/// whose right-hand sides carry second s-derivatives of curvature fields;
/// the same kink re-amplified by 1/dr^2 is O(1) there and does not shrink
/// under refinement.
pub const EDGE_SKIP_SECOND_DERIV: usize = 5;

/// Truth values of the five a priori curvature estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundFlags {
    /// max(alpha, beta, gamma) <= K0 (1 + tol).
    pub upper: bool,
    /// min(alpha, beta, gamma) >= L0 e^{-4 K0^2 t} (1 - tol).
    pub lower_exp: bool,
    /// min alpha >= L0 / (4 K0 L0 t + 1) (1 - tol).
    pub alpha_poly: bool,
    /// min(alpha, beta, gamma) > 0: negative curvature preserved.
    pub positive: bool,
    /// min alpha > 0: the flow operator stays elliptic.
    pub elliptic: bool,
}

impl BoundFlags {
    pub fn all(&self) -> bool {
        self.upper && self.lower_exp && self.alpha_poly && self.positive && self.elliptic
    }
}

/// Evaluates the five curvature estimates against the initial extrema
/// K0 >= L0 > 0 at time t, with relative tolerance `tol`.
pub fn check_bounds<S: Scalar>(c: &CurvatureField<S>, t: S, k0: S, l0: S, tol: S) -> BoundFlags {
    let four = lit::<S>(4.0);
    let max_all = c.max_all();
    let min_all = c.min_all();
    let min_alpha = c.min_of(Component::Alpha);
    let up = S::one() + tol;
    let down = S::one() - tol;
    BoundFlags {
        upper: max_all <= k0 * up,
        lower_exp: min_all >= l0 * (-four * k0 * k0 * t).exp() * down,
        alpha_poly: min_alpha >= l0 / (four * k0 * l0 * t + S::one()) * down,
        positive: min_all > S::zero(),
        elliptic: min_alpha > S::zero(),
    }
}

/// The integral J = int ( P/3 - (det P)^{1/3} ) dV over the solid torus.
///
/// In the orthonormal frame along (mu, lambda, s) the Einstein tensor
/// P_ab = R_ab - R/2 g_ab is diagonal: Ric(e_i, e_i) is the sum of the two
/// sectional curvatures of planes containing e_i and R/2 subtracts all
/// three once, leaving P(e_i, e_i) = -K(plane normal to e_i). The
/// eigenvalues along mu, lambda, s are therefore (beta, gamma, alpha), so
/// P = alpha + beta + gamma and det P = alpha beta gamma. With the angular
/// coordinates ranging over [0, 1), dV reduces to f g h dr, and the
/// arithmetic-geometric mean inequality makes the integrand nonnegative,
/// vanishing exactly at constant curvature.
pub fn compute_j<S: Scalar>(m: &MetricProfile<S>, c: &CurvatureField<S>) -> Result<S> {
    let n = m.grid().n();
    debug_assert_eq!(c.alpha.len(), n);
    let third = S::one() / lit::<S>(3.0);
    let dr = m.grid().dr();
    let mut total = S::zero();
    for i in 0..n {
        let (a, b, g) = (c.alpha[i], c.beta[i], c.gamma[i]);
        for (name, v) in [("alpha", a), ("beta", b), ("gamma", g)] {
            if !v.is_finite() || v <= S::zero() {
                return Err(XcfError::NonFinite { field: name, index: i });
            }
        }
        let trace = (a + b + g) * third;
        let det_root = (a * b * g).cbrt();
        total += m.f()[i] * m.g()[i] * m.h()[i] * (trace - det_root);
    }
    Ok(total * dr)
}

/// True when the sampled J series never rises by more than
/// tol * (1 + |J_k|) between consecutive samples.
pub fn check_j_monotone<S: Scalar>(series: &[(S, S)], tol: S) -> bool {
    series.windows(2).all(|w| {
        let (_, j0) = w[0];
        let (_, j1) = w[1];
        j1 <= j0 + tol * (S::one() + j0.abs())
    })
}

/// Pointwise inputs for the interior evolution equation of alpha.
#[derive(Debug, Clone, Copy)]
pub struct AlphaEvolutionTerms<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub u_s: S,
    pub v_s: S,
    pub alpha_s: S,
    pub alpha_ss: S,
}

/// The four algebraically equivalent interior forms of d alpha/dt.
///
/// They agree identically whenever the inputs satisfy the geometric
/// identity alpha_s = beta u_s + gamma v_s - alpha (u_s + v_s); evaluated
/// on exact data they differ only by rounding.
pub fn alpha_rhs_forms<S: Scalar>(t: &AlphaEvolutionTerms<S>) -> [S; 4] {
    let two = lit::<S>(2.0);
    let three = lit::<S>(3.0);
    let four = lit::<S>(4.0);
    let AlphaEvolutionTerms { alpha: a, beta: b, gamma: g, u_s: u, v_s: v, alpha_s, alpha_ss } = *t;
    let diff = a * alpha_ss;
    let form_a = diff + (b * u + g * v + two * a * (u + v)) * alpha_s + two * a * (a * a - two * b * g);
    let form_b = diff
        + (g * v - three * b * u + two * a * (u + v)) * alpha_s
        + four * u * u * b * (b - a)
        - two * a * a * (two * b - a);
    let form_c = diff
        + (b * u - three * g * v + two * a * (u + v)) * alpha_s
        + four * v * v * g * (g - a)
        - two * a * a * (two * g - a);
    let form_d = diff + (b * u + g * v) * alpha_s
        - two * a * (u * u * (a - b) + v * v * (a - g) + (a - b) * (a - g) + b * g);
    [form_a, form_b, form_c, form_d]
}

/// Core-limit evolution rates for (alpha, beta, gamma), valid where the
/// curvatures extend as even functions and alpha = beta.
pub fn core_evolution_rates<S: Scalar>(
    alpha: S,
    beta: S,
    gamma: S,
    alpha_ss: S,
    beta_ss: S,
    gamma_ss: S,
) -> (S, S, S) {
    let two = lit::<S>(2.0);
    let four = lit::<S>(4.0);
    let four_thirds = lit::<S>(4.0 / 3.0);
    let two_thirds = lit::<S>(2.0 / 3.0);
    let a_t = four * alpha * alpha_ss + two * alpha.powi(3) - four * alpha * alpha * gamma;
    let b_t = four_thirds * alpha * beta_ss - two_thirds * beta.powi(3)
        - four_thirds * beta * beta * gamma;
    let g_t = two * alpha * gamma_ss - two * alpha * alpha * gamma;
    (a_t, b_t, g_t)
}

/// Predicted time derivatives of the curvature fields.
#[derive(Debug, Clone)]
pub struct EvolutionRates<S> {
    pub alpha_t: Vec<S>,
    pub beta_t: Vec<S>,
    pub gamma_t: Vec<S>,
}

/// Evaluates the curvature evolution equations on a profile: the interior
/// equations away from the core and the core-limit forms at the two cells
/// nearest r = 0, where u_s approaches its 1/s envelope and the interior
/// combination u_s^2 (alpha - beta) loses accuracy.
///
/// `boundary` carries the metric Dirichlet data when known (inside a
/// flow); curvature fields themselves always extrapolate at the outer
/// edge. Rates are returned at every cell, but the outermost
/// [`EDGE_SKIP_SECOND_DERIV`] of them sit inside the boundary truncation
/// footprint and should not enter quantitative comparisons.
pub fn curvature_rhs_oracle<S: Scalar>(
    m: &MetricProfile<S>,
    boundary: Option<&BoundaryValues<S>>,
) -> Result<EvolutionRates<S>> {
    let n = m.grid().n();
    let c = curvatures_impl(m, boundary, lit(DEFAULT_FLOOR))?;
    let parts = curvature_parts(m, boundary);
    let outer_h = match boundary {
        Some(bv) => OuterGhost::Dirichlet(bv.h),
        None => OuterGhost::Extrapolate,
    };
    let h_ext = m.h_extended(outer_h);
    let sd = |field: &[S]| m.s_derivatives(field, Parity::Even, OuterGhost::Extrapolate, &h_ext);
    let (alpha_s, alpha_ss) = sd(&c.alpha);
    let (beta_s, beta_ss) = sd(&c.beta);
    let (gamma_s, gamma_ss) = sd(&c.gamma);

    let two = lit::<S>(2.0);
    let three = lit::<S>(3.0);
    let mut alpha_t = Vec::with_capacity(n);
    let mut beta_t = Vec::with_capacity(n);
    let mut gamma_t = Vec::with_capacity(n);
    let core_cells = match m.topology() {
        Topology::SolidTorus => 2,
        Topology::Annulus => 0,
    };
    for i in 0..n {
        let (a, b, g) = (c.alpha[i], c.beta[i], c.gamma[i]);
        if i < core_cells {
            let (at, bt, gt) =
                core_evolution_rates(a, b, g, alpha_ss[i], beta_ss[i], gamma_ss[i]);
            alpha_t.push(at);
            beta_t.push(bt);
            gamma_t.push(gt);
            continue;
        }
        let u = parts.fs[i] / m.f()[i];
        let v = parts.gs[i] / m.g()[i];
        let at = a * alpha_ss[i]
            + (two * a * (u + v) + b * u + g * v) * alpha_s[i]
            + two * a * (a * a - two * b * g);
        let bt = a * beta_ss[i]
            + (three * b * u + g * v - two * a * u) * beta_s[i]
            + two * b * (u * u * (a - b) - a * g);
        let gt = a * gamma_ss[i]
            + (three * g * v + b * u - two * a * v) * gamma_s[i]
            + two * g * (v * v * (a - g) - a * b);
        alpha_t.push(at);
        beta_t.push(bt);
        gamma_t.push(gt);
    }
    Ok(EvolutionRates { alpha_t, beta_t, gamma_t })
}

/// Derivative at `at` of the quadratic through three samples.
fn deriv3<S: Scalar>(t0: S, y0: S, t1: S, y1: S, t2: S, y2: S, at: S) -> S {
    let two = lit::<S>(2.0);
    let l0 = (two * at - t1 - t2) / ((t0 - t1) * (t0 - t2));
    let l1 = (two * at - t0 - t2) / ((t1 - t0) * (t1 - t2));
    let l2 = (two * at - t0 - t1) / ((t2 - t0) * (t2 - t1));
    y0 * l0 + y1 * l1 + y2 * l2
}

/// Residual of the transport identity d s1/dt = int beta gamma ds over a
/// snapshot series.
///
/// `quads` holds the quadrature of beta gamma ds at each snapshot. The
/// time derivative of s1 uses the three-point formula centered where
/// possible and one-sided second order at the ends; the residual is
/// normalized by max(1, |ds1/dt|). Fewer than three snapshots, or a
/// degenerate time span, give zero residuals.
pub fn transport_residual_series<S: Scalar>(ts: &[S], s1s: &[S], quads: &[S]) -> Vec<S> {
    let n = ts.len();
    assert_eq!(s1s.len(), n);
    assert_eq!(quads.len(), n);
    if n < 3 {
        return vec![S::zero(); n];
    }
    (0..n)
        .map(|k| {
            let w = k.clamp(1, n - 2);
            let (i0, i1, i2) = (w - 1, w, w + 1);
            if ts[i2] - ts[i0] <= S::zero() {
                return S::zero();
            }
            let fd = deriv3(ts[i0], s1s[i0], ts[i1], s1s[i1], ts[i2], s1s[i2], ts[k]);
            (fd - quads[k]).abs() / S::one().max(fd.abs())
        })
        .collect()
}

/// Residual centered on the middle of a three-snapshot window, used by the
/// stepping loop to fill the series record as snapshots stream out.
pub fn lagged_transport_residual<S: Scalar>(window: &[(S, S, S)]) -> S {
    if window.len() < 3 {
        return S::zero();
    }
    let [(t0, s0, _), (t1, s1, q1), (t2, s2, _)] = [window[0], window[1], window[2]];
    if t2 - t0 <= S::zero() {
        return S::zero();
    }
    let fd = deriv3(t0, s0, t1, s1, t2, s2, t1);
    (fd - q1).abs() / S::one().max(fd.abs())
}

/// Quadrature of beta gamma ds over the profile.
pub fn beta_gamma_integral<S: Scalar>(m: &MetricProfile<S>, c: &CurvatureField<S>) -> S {
    let dr = m.grid().dr();
    let mut total = S::zero();
    for i in 0..m.grid().n() {
        total += c.beta[i] * c.gamma[i] * m.h()[i];
    }
    total * dr
}

/// Derivative-growth products (t max|beta_s|, t max|gamma_s|). Bounded on
/// finite time windows; no explicit constant is asserted. The maximum
/// runs over cells clear of the boundary footprint
/// ([`EDGE_SKIP_FIRST_DERIV`]), so constant-curvature runs report values
/// at discretization-noise level.
pub fn bbs_products<S: Scalar>(m: &MetricProfile<S>, c: &CurvatureField<S>, t: S) -> (S, S) {
    let limit = m.grid().n().saturating_sub(EDGE_SKIP_FIRST_DERIV);
    let max_abs_deriv = |field: &[S]| {
        d_ds_with(m, field, Parity::Even, OuterGhost::Extrapolate)
            .iter()
            .take(limit)
            .fold(S::zero(), |a, &b| a.max(b.abs()))
    };
    (t * max_abs_deriv(&c.beta), t * max_abs_deriv(&c.gamma))
}

/// Per-snapshot scalar monitors emitted by the stepping loop.
#[derive(Debug, Clone)]
pub struct DiagnosticsRecord<S> {
    pub t: S,
    /// Stability-limited step size at this snapshot (before clamping to
    /// the snapshot cadence).
    pub dt: S,
    pub s1: S,
    pub alpha_min: S,
    pub alpha_max: S,
    pub beta_min: S,
    pub beta_max: S,
    pub gamma_min: S,
    pub gamma_max: S,
    pub j: S,
    /// Transport residual centered one snapshot back; zero on the first
    /// two rows.
    pub transport_residual: S,
    /// |f_r(0)/h(0) - 2 pi|.
    pub core_slope_error: S,
    pub bbs_beta: S,
    pub bbs_gamma: S,
    pub flags: BoundFlags,
}
