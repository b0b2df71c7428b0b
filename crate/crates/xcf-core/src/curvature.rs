//! Sectional curvature of a radial metric profile.
//!
//! For G = f^2 dmu^2 + g^2 dlambda^2 + ds^2 the principal sectional
//! curvatures are
//!
//!     K_{lambda mu} = -f_s g_s / (f g),
//!     K_{lambda r}  = -g_ss / g,
//!     K_{mu r}      = -f_ss / f,
//!
//! and we track their (positive-when-negatively-curved) magnitudes
//! alpha = f_s g_s/(f g), beta = g_ss/g, gamma = f_ss/f. At the core the
//! ratio forms degenerate; the limits follow from the parity extensions:
//! alpha and beta share the limit of g_ss/g, and gamma tends to the limit
//! of f_ss/f. Rotation about the core forces alpha = beta there.

use crate::error::{Result, XcfError};
use crate::grid::RadialGrid;
use crate::profile::{MetricProfile, Topology};
use crate::scalar::{lit, to_f64, Scalar};
use crate::stencil::{extrapolate_even_to_core, OuterGhost, Parity};

/// Positivity floor applied to f and g before division. Hitting it is an
/// error rather than a clamp: a vanishing alpha means the flow left its
/// elliptic regime, and that must surface as a failure.
pub const DEFAULT_FLOOR: f64 = 1e-14;

/// Dirichlet data for all three metric components at r = 1.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryValues<S> {
    pub f: S,
    pub g: S,
    pub h: S,
}

/// Grid-sampled curvature magnitudes plus their core limits.
#[derive(Debug, Clone)]
pub struct CurvatureField<S> {
    pub grid: RadialGrid<S>,
    pub alpha: Vec<S>,
    pub beta: Vec<S>,
    pub gamma: Vec<S>,
    /// Core limit shared by alpha and beta (both extrapolate g_ss/g).
    pub core_alpha: S,
    pub core_beta: S,
    /// Core limit of f_ss/f.
    pub core_gamma: S,
}

impl<S: Scalar> CurvatureField<S> {
    /// Minimum of one component over cells and core limit.
    pub fn min_of(&self, which: Component) -> S {
        let (v, core) = self.component(which);
        v.iter().fold(core, |a, &b| a.min(b))
    }

    /// Maximum of one component over cells and core limit.
    pub fn max_of(&self, which: Component) -> S {
        let (v, core) = self.component(which);
        v.iter().fold(core, |a, &b| a.max(b))
    }

    /// Minimum over all three components, core limits included.
    pub fn min_all(&self) -> S {
        self.min_of(Component::Alpha)
            .min(self.min_of(Component::Beta))
            .min(self.min_of(Component::Gamma))
    }

    /// Maximum over all three components, core limits included.
    pub fn max_all(&self) -> S {
        self.max_of(Component::Alpha)
            .max(self.max_of(Component::Beta))
            .max(self.max_of(Component::Gamma))
    }

    fn component(&self, which: Component) -> (&[S], S) {
        match which {
            Component::Alpha => (&self.alpha, self.core_alpha),
            Component::Beta => (&self.beta, self.core_beta),
            Component::Gamma => (&self.gamma, self.core_gamma),
        }
    }
}

/// One of the three principal curvature magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Alpha,
    Beta,
    Gamma,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Alpha => "alpha",
            Component::Beta => "beta",
            Component::Gamma => "gamma",
        }
    }
}

/// Metric derivatives shared by the curvature assembly and the evolution
/// oracle: first and second arclength derivatives of f and g.
pub(crate) struct CurvatureParts<S> {
    pub fs: Vec<S>,
    pub gs: Vec<S>,
    pub fss: Vec<S>,
    pub gss: Vec<S>,
}

pub(crate) fn curvature_parts<S: Scalar>(
    m: &MetricProfile<S>,
    boundary: Option<&BoundaryValues<S>>,
) -> CurvatureParts<S> {
    let (outer_f, outer_g, outer_h) = match boundary {
        Some(bv) => (
            OuterGhost::Dirichlet(bv.f),
            OuterGhost::Dirichlet(bv.g),
            OuterGhost::Dirichlet(bv.h),
        ),
        None => (
            OuterGhost::Extrapolate,
            OuterGhost::Extrapolate,
            OuterGhost::Extrapolate,
        ),
    };
    let h_ext = m.h_extended(outer_h);
    let (fs, fss) = m.s_derivatives(m.f(), Parity::Odd, outer_f, &h_ext);
    let (gs, gss) = m.s_derivatives(m.g(), Parity::Even, outer_g, &h_ext);
    CurvatureParts { fs, gs, fss, gss }
}

/// Curvature of a standalone profile; outer ghosts extrapolate the field.
pub fn curvatures<S: Scalar>(m: &MetricProfile<S>) -> Result<CurvatureField<S>> {
    curvatures_impl(m, None, lit(DEFAULT_FLOOR))
}

/// Curvature with prescribed Dirichlet data at r = 1, as used inside the
/// flow where the boundary values are known exactly.
pub fn curvatures_with_boundary<S: Scalar>(
    m: &MetricProfile<S>,
    bv: &BoundaryValues<S>,
) -> Result<CurvatureField<S>> {
    curvatures_impl(m, Some(bv), lit(DEFAULT_FLOOR))
}

pub(crate) fn curvatures_impl<S: Scalar>(
    m: &MetricProfile<S>,
    boundary: Option<&BoundaryValues<S>>,
    floor: S,
) -> Result<CurvatureField<S>> {
    let n = m.grid().n();
    for i in 0..n {
        if m.f()[i] < floor {
            return Err(XcfError::NonFinite { field: "f", index: i });
        }
        if m.g()[i] < floor {
            return Err(XcfError::NonFinite { field: "g", index: i });
        }
    }
    let parts = curvature_parts(m, boundary);
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    for i in 0..n {
        alpha.push(parts.fs[i] * parts.gs[i] / (m.f()[i] * m.g()[i]));
        beta.push(parts.gss[i] / m.g()[i]);
        gamma.push(parts.fss[i] / m.f()[i]);
    }
    for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(XcfError::NonFinite { field: name, index: i });
        }
    }
    // Core limits: beta and gamma are even, so a quadratic in r^2 through
    // the first three cells extrapolates them; alpha shares beta's limit.
    let core_beta = extrapolate_even_to_core(&beta);
    let core_gamma = extrapolate_even_to_core(&gamma);
    Ok(CurvatureField {
        grid: m.grid().clone(),
        alpha,
        beta,
        gamma,
        core_alpha: core_beta,
        core_beta,
        core_gamma,
    })
}

/// Outcome of the core-regularity check.
#[derive(Debug, Clone)]
pub struct SmoothnessReport<S> {
    pub passed: bool,
    /// Parity-extrapolated f_r(0)/h(0).
    pub core_slope: S,
    pub slope_error: S,
    pub f_positive: bool,
    pub g_core_positive: bool,
}

/// Extrapolated core slope f_r(0)/h(0) of a solid-torus profile.
///
/// f is odd, so f/r is even with value f_r(0) at the core; both f/r and h
/// are extrapolated by the quadratic-in-r^2 rule through the first three
/// cells, an effectively one-sided third-order extraction.
pub fn core_slope<S: Scalar>(m: &MetricProfile<S>) -> S {
    let over_r: Vec<S> = (0..3)
        .map(|i| m.f()[i] / m.grid().center(i))
        .collect();
    let fr0 = extrapolate_even_to_core(&over_r);
    let h0 = extrapolate_even_to_core(&m.h()[..3]);
    fr0 / h0
}

/// Checks the smooth-extension conditions at the core: f positive away
/// from it, g positive at it, and core slope within `tol` of 2*pi.
pub fn validate_smoothness<S: Scalar>(m: &MetricProfile<S>, tol: S) -> SmoothnessReport<S> {
    if m.topology() != Topology::SolidTorus {
        return SmoothnessReport {
            passed: false,
            core_slope: S::nan(),
            slope_error: S::nan(),
            f_positive: true,
            g_core_positive: true,
        };
    }
    let f_positive = m.f().iter().all(|&x| x > S::zero());
    let g_core_positive = extrapolate_even_to_core(&m.g()[..3]) > S::zero();
    let slope = core_slope(m);
    let two_pi = lit::<S>(2.0) * S::PI();
    let slope_error = (slope - two_pi).abs();
    SmoothnessReport {
        passed: f_positive && g_core_positive && slope_error <= tol,
        core_slope: slope,
        slope_error,
        f_positive,
        g_core_positive,
    }
}

/// Renders a violation location for error messages.
pub(crate) fn cell_location<S: Scalar>(grid: &RadialGrid<S>, index: Option<usize>) -> String {
    match index {
        Some(i) => format!("cell {i} (r = {})", to_f64(grid.center(i))),
        None => "the core".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use std::f64::consts::PI;

    /// Odd/even profile sampled as f = 2pi/kappa sinh(kappa s),
    /// g = g0 cosh(kappa' s), h = s0, s = s0 r. Built by hand here so the
    /// constructors in `initial` can be tested against it independently.
    fn sinh_cosh_profile(
        kappa: f64,
        kappa_p: f64,
        g0: f64,
        s0: f64,
        n: usize,
    ) -> MetricProfile<f64> {
        let grid = RadialGrid::<f64>::new(n).unwrap();
        let f: Vec<f64> = grid
            .centers()
            .iter()
            .map(|&r| 2.0 * PI / kappa * (kappa * s0 * r).sinh())
            .collect();
        let g: Vec<f64> = grid
            .centers()
            .iter()
            .map(|&r| g0 * (kappa_p * s0 * r).cosh())
            .collect();
        let h = vec![s0; n];
        MetricProfile::new(grid, f, g, h).unwrap()
    }

    fn max_dev(v: &[f64], x: f64) -> f64 {
        v.iter().fold(0.0, |a, &b| a.max((b - x).abs()))
    }

    #[test]
    fn hyperbolic_tube_has_unit_curvatures() {
        let m = sinh_cosh_profile(1.0, 1.0, 2.0, 1.0, 256);
        let c = curvatures(&m).unwrap();
        assert!(max_dev(&c.alpha, 1.0) < 1e-3, "alpha dev {}", max_dev(&c.alpha, 1.0));
        assert!(max_dev(&c.beta, 1.0) < 1e-3);
        assert!(max_dev(&c.gamma, 1.0) < 1e-3);
        assert!((c.core_alpha - 1.0).abs() < 1e-3);
        assert!((c.core_gamma - 1.0).abs() < 1e-3);
        assert_eq!(c.core_alpha, c.core_beta);
    }

    /// kappa-tube family has constant curvature kappa^2; kappa = 1.5 gives
    /// 2.25, from differentiating the closed forms.
    #[test]
    fn kappa_tube_curvature_is_kappa_squared() {
        let kappa: f64 = 1.5;
        let m = sinh_cosh_profile(kappa, kappa, 0.8, 1.0, 256);
        let c = curvatures(&m).unwrap();
        let k2 = kappa * kappa;
        assert!(max_dev(&c.alpha, k2) < 4e-3);
        assert!(max_dev(&c.beta, k2) < 4e-3);
        assert!(max_dev(&c.gamma, k2) < 4e-3);
    }

    /// Exponential cusp collar f = M e^{s-s0}, g = L e^{s-s0} is hyperbolic.
    #[test]
    fn cusp_profile_has_unit_curvatures() {
        let n = 128;
        let grid = RadialGrid::new(n).unwrap();
        let (s_min, s0) = (0.5_f64, 1.0_f64);
        let width = s0 - s_min;
        let (m_len, l_len) = (2.0 * PI * 1.01, 3.0);
        let s = |r: f64| s_min + width * r;
        let f: Vec<f64> = grid.centers().iter().map(|&r| m_len * (s(r) - s0).exp()).collect();
        let g: Vec<f64> = grid.centers().iter().map(|&r| l_len * (s(r) - s0).exp()).collect();
        let h = vec![width; n];
        let m = MetricProfile::new_annulus(grid, f, g, h).unwrap();
        let c = curvatures(&m).unwrap();
        assert!(max_dev(&c.alpha, 1.0) < 2e-4);
        assert!(max_dev(&c.beta, 1.0) < 2e-4);
        assert!(max_dev(&c.gamma, 1.0) < 2e-4);
    }

    /// Near the core alpha and beta agree to O(dr^2); halving dr must
    /// shrink the innermost-cell gap by roughly 4x.
    #[test]
    fn alpha_beta_gap_at_innermost_cell_is_second_order() {
        // kappa' != kappa so the profile is not constant-curvature.
        let gap = |n: usize| {
            let m = sinh_cosh_profile(1.3, 0.9, 1.1, 1.0, n);
            let c = curvatures(&m).unwrap();
            (c.alpha[0] - c.beta[0]).abs()
        };
        let (g64, g128, g256) = (gap(64), gap(128), gap(256));
        assert!(g128 < g64 && g256 < g128, "gaps {g64} {g128} {g256}");
        let r1 = g64 / g128;
        let r2 = g128 / g256;
        assert!(r1 > 2.5 && r1 < 6.0, "ratio {r1}");
        assert!(r2 > 2.5 && r2 < 6.0, "ratio {r2}");
        assert_eq!(
            curvatures(&sinh_cosh_profile(1.3, 0.9, 1.1, 1.0, 64))
                .unwrap()
                .core_alpha,
            curvatures(&sinh_cosh_profile(1.3, 0.9, 1.1, 1.0, 64))
                .unwrap()
                .core_beta
        );
    }

    /// Constant-curvature detection sharpens at second order in dr.
    #[test]
    fn curvature_errors_refine_at_second_order() {
        let kappa: f64 = 1.5;
        let k2 = kappa * kappa;
        let err = |n: usize| {
            let m = sinh_cosh_profile(kappa, kappa, 0.8, 1.0, n);
            let c = curvatures(&m).unwrap();
            max_dev(&c.alpha, k2)
                .max(max_dev(&c.beta, k2))
                .max(max_dev(&c.gamma, k2))
        };
        let (e64, e128, e256) = (err(64), err(128), err(256));
        let order = (e64 / e256).log2() / 2.0;
        assert!(order > 1.8 && order < 2.3, "order {order}, errs {e64} {e128} {e256}");
    }

    /// Scaling (f, g, h) -> (2f, 2g, 2h) divides every curvature by 4,
    /// exactly at the discrete level (powers of two commute with IEEE ops).
    #[test]
    fn scaling_covariance_exact_for_power_of_two() {
        let m = sinh_cosh_profile(1.2, 0.8, 1.3, 1.0, 64);
        let m2 = crate::profile::scale_profile(&m, 2.0).unwrap();
        let c = curvatures(&m).unwrap();
        let c2 = curvatures(&m2).unwrap();
        for i in 0..64 {
            assert_eq!(c.alpha[i] / 4.0, c2.alpha[i]);
            assert_eq!(c.beta[i] / 4.0, c2.beta[i]);
            assert_eq!(c.gamma[i] / 4.0, c2.gamma[i]);
        }
        assert_eq!(c.core_alpha / 4.0, c2.core_alpha);
        assert_eq!(c.core_gamma / 4.0, c2.core_gamma);
    }

    #[test]
    fn smoothness_validation_accepts_tube_and_rejects_wrong_slope() {
        let m = sinh_cosh_profile(1.0, 1.0, 2.0, 1.0, 128);
        let rep = validate_smoothness(&m, 1e-3);
        assert!(rep.passed, "slope {}", rep.core_slope);
        assert!((rep.core_slope - 2.0 * PI).abs() < 1e-6);

        // f = sinh(s): slope 1 instead of 2*pi.
        let n = 128;
        let grid = RadialGrid::<f64>::new(n).unwrap();
        let f: Vec<f64> = grid.centers().iter().map(|&r| r.sinh()).collect();
        let g: Vec<f64> = grid.centers().iter().map(|&r| r.cosh()).collect();
        let h = vec![1.0; n];
        let bad = MetricProfile::new(grid, f, g, h).unwrap();
        let rep = validate_smoothness(&bad, 1e-3);
        assert!(!rep.passed);
        assert!((rep.core_slope - 1.0).abs() < 1e-6);
    }

    #[test]
    fn floor_violation_is_an_error_not_a_clamp() {
        let n = 32;
        let grid = RadialGrid::new(n).unwrap();
        let mut f: Vec<f64> = grid.centers().iter().map(|&r| r).collect();
        f[20] = 1e-20; // positive, so the profile builds, but below floor
        let g = vec![1.0; n];
        let h = vec![1.0; n];
        let m = MetricProfile::new(grid, f, g, h).unwrap();
        match curvatures(&m) {
            Err(XcfError::NonFinite { field: "f", index: 20 }) => {}
            other => panic!("expected floor error, got {other:?}"),
        }
    }
}
