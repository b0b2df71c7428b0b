//! Initial metrics: the hyperbolic geodesic tube, the cusp collar, and a
//! negatively curved family on the solid torus with boundary meridian
//! length ell1 > 2 pi s0.
//!
//! All solid-torus constructors normalize the radial gauge at t = 0 to
//! h = s0, so that s(r) = s0 r and the boundary sits at arclength s0 from
//! the core.

use crate::closed_form::TwoPiClosedForm;
use crate::curvature::{cell_location, curvatures, Component, CurvatureField};
use crate::error::{Result, XcfError};
use crate::grid::RadialGrid;
use crate::profile::MetricProfile;
use crate::scalar::{lit, to_f64, Scalar};

/// Parameters of the negatively curved solid-torus family.
#[derive(Debug, Clone, Copy)]
pub struct TwoPiParams<S> {
    /// Boundary meridian circumference f(s0); must exceed 2 pi s0.
    pub ell1: S,
    /// Boundary longitude length g(s0).
    pub longitude_len: S,
    /// Arclength from the core to the boundary; at least 1.
    pub s0: S,
    /// Rate of the cosh profile for g; defaults to the solved meridian
    /// rate kappa. Choosing a different value breaks the equal-curvature
    /// condition at the core and is exposed for experiments only.
    pub kappa_prime: Option<S>,
    /// Amplitude of the multiplicative bump on g; 0 disables it.
    pub epsilon: S,
}

impl<S: Scalar> TwoPiParams<S> {
    pub fn validate(&self) -> Result<()> {
        let two_pi_s0 = lit::<S>(2.0) * S::PI() * self.s0;
        if !(self.ell1 > S::zero()) || !(self.longitude_len > S::zero()) || !(self.s0 > S::zero()) {
            return Err(XcfError::InvalidParam(
                "ell1, longitude length, and s0 must be positive".into(),
            ));
        }
        if self.s0 < S::one() {
            return Err(XcfError::InvalidParam(format!(
                "initial radius s0 = {} must be at least 1",
                to_f64(self.s0)
            )));
        }
        if two_pi_s0 >= self.ell1 {
            return Err(XcfError::Infeasible {
                twopi_s0: to_f64(two_pi_s0),
                ell1: to_f64(self.ell1),
            });
        }
        if let Some(kp) = self.kappa_prime {
            if !(kp > S::zero()) {
                return Err(XcfError::InvalidParam("kappa_prime must be positive".into()));
            }
        }
        if self.epsilon < S::zero() {
            return Err(XcfError::InvalidParam("epsilon must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Solves ell1 * kappa = 2 pi sinh(kappa s0) for the unique kappa > 0.
///
/// sinh(kappa s0)/kappa increases strictly from s0, so a root exists and
/// is unique exactly when ell1 > 2 pi s0. Plain bisection; the bracket is
/// grown geometrically first.
pub fn solve_kappa<S: Scalar>(ell1: S, s0: S) -> Result<S> {
    let two_pi = lit::<S>(2.0) * S::PI();
    if two_pi * s0 >= ell1 {
        return Err(XcfError::Infeasible {
            twopi_s0: to_f64(two_pi * s0),
            ell1: to_f64(ell1),
        });
    }
    let residual = |k: S| two_pi * (k * s0).sinh() - ell1 * k;
    let mut lo = lit::<S>(1e-8);
    let mut hi = S::one();
    let mut grow = 0;
    while residual(hi) < S::zero() {
        hi = hi * lit::<S>(2.0);
        grow += 1;
        if grow > 200 {
            return Err(XcfError::InvalidParam("kappa bracket did not close".into()));
        }
    }
    let tol = lit::<S>(1e-12);
    for _ in 0..200 {
        let mid = lit::<S>(0.5) * (lo + hi);
        if residual(mid) >= S::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) <= tol * hi {
            break;
        }
    }
    Ok(lit::<S>(0.5) * (lo + hi))
}

fn sample_closed_form<S: Scalar>(
    cf: &TwoPiClosedForm<S>,
    grid: RadialGrid<S>,
) -> Result<MetricProfile<S>> {
    let s0 = cf.s0;
    let f: Vec<S> = grid.centers().iter().map(|&r| cf.f(s0 * r)).collect();
    let g: Vec<S> = grid.centers().iter().map(|&r| cf.g(s0 * r)).collect();
    let h = vec![s0; grid.n()];
    MetricProfile::new(grid, f, g, h)
}

/// Tube of radius s0 around a closed geodesic of length b in a hyperbolic
/// manifold: f = 2 pi sinh s, g = sqrt(b) cosh s, curvature identically -1.
pub fn hyperbolic_tube<S: Scalar>(b: S, s0: S, grid: RadialGrid<S>) -> Result<MetricProfile<S>> {
    if !(b > S::zero()) || !(s0 > S::zero()) {
        return Err(XcfError::InvalidParam(format!(
            "tube needs b > 0 and s0 > 0, got b = {}, s0 = {}",
            to_f64(b),
            to_f64(s0)
        )));
    }
    sample_closed_form(&TwoPiClosedForm::tube(b, s0), grid)
}

/// Closed-form description of the metric [`make_two_pi_metric`] builds,
/// with the solved rate kappa; useful as an analytic oracle.
pub fn two_pi_closed_form<S: Scalar>(p: &TwoPiParams<S>) -> Result<TwoPiClosedForm<S>> {
    p.validate()?;
    let kappa = solve_kappa(p.ell1, p.s0)?;
    let kappa_prime = p.kappa_prime.unwrap_or(kappa);
    let g_amp = p.longitude_len / (kappa_prime * p.s0).cosh();
    Ok(TwoPiClosedForm {
        kappa,
        kappa_prime,
        g_amp,
        s0: p.s0,
        epsilon: p.epsilon,
    })
}

/// Negatively curved metric on the solid torus with f(s0) = ell1,
/// f_s(0) = 2 pi, and g(s0) = the requested longitude length.
///
/// The meridian rate kappa solves ell1 kappa = 2 pi sinh(kappa s0). With
/// the default kappa' = kappa and epsilon = 0 the curvatures are constant
/// and equal to kappa^2, so the metric has equal sectional curvatures at
/// the core. The result is rejected unless all curvature magnitudes come
/// out strictly positive, which bounds how large epsilon may be.
pub fn make_two_pi_metric<S: Scalar>(
    p: &TwoPiParams<S>,
    grid: RadialGrid<S>,
) -> Result<MetricProfile<S>> {
    let cf = two_pi_closed_form(p)?;
    let m = sample_closed_form(&cf, grid)?;
    let report = validate_negative_curvature(&m)?;
    if let Some(v) = report.violation {
        return Err(XcfError::CurvatureSignViolation {
            which: v.component.name(),
            value: to_f64(v.value),
            location: cell_location(m.grid(), v.index),
        });
    }
    Ok(m)
}

/// Exponential collar f = M e^{s - s0}, g = L e^{s - s0} on s in
/// [s_min, s0], the boundary form of a cusp. Coreless, hence only usable
/// for curvature checks, never as flow initial data.
pub fn cusp_annulus<S: Scalar>(
    meridian_len: S,
    longitude_len: S,
    s0: S,
    s_min: S,
    grid: RadialGrid<S>,
) -> Result<MetricProfile<S>> {
    if !(s_min > S::zero()) || !(s_min < s0) {
        return Err(XcfError::InvalidParam(format!(
            "cusp collar needs 0 < s_min < s0, got s_min = {}, s0 = {}",
            to_f64(s_min),
            to_f64(s0)
        )));
    }
    if !(meridian_len > S::zero()) || !(longitude_len > S::zero()) {
        return Err(XcfError::InvalidParam("cusp lengths must be positive".into()));
    }
    let width = s0 - s_min;
    let s = |r: S| s_min + width * r;
    let f: Vec<S> = grid
        .centers()
        .iter()
        .map(|&r| meridian_len * (s(r) - s0).exp())
        .collect();
    let g: Vec<S> = grid
        .centers()
        .iter()
        .map(|&r| longitude_len * (s(r) - s0).exp())
        .collect();
    let h = vec![width; grid.n()];
    MetricProfile::new_annulus(grid, f, g, h)
}

/// Location and value of a non-positive curvature sample.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureViolation<S> {
    pub component: Component,
    /// `None` marks the core limit.
    pub index: Option<usize>,
    pub value: S,
}

/// Outcome of the negative-curvature check, with the curvature extrema
/// K0 (sup) and L0 (inf) over all three components and the core limits.
#[derive(Debug, Clone)]
pub struct NegativeCurvatureReport<S> {
    pub passed: bool,
    pub k0: S,
    pub l0: S,
    pub violation: Option<CurvatureViolation<S>>,
    pub curvature: CurvatureField<S>,
}

/// Checks min(alpha, beta, gamma) > 0 everywhere, core limits included,
/// and reports the initial curvature extrema K0 and L0. The located
/// violation, if any, is the innermost offending sample.
pub fn validate_negative_curvature<S: Scalar>(
    m: &MetricProfile<S>,
) -> Result<NegativeCurvatureReport<S>> {
    let c = curvatures(m)?;
    let mut violation = None;
    let components = [
        (Component::Alpha, &c.alpha, c.core_alpha),
        (Component::Beta, &c.beta, c.core_beta),
        (Component::Gamma, &c.gamma, c.core_gamma),
    ];
    'scan: for (comp, _, core) in components {
        if core <= S::zero() {
            violation = Some(CurvatureViolation { component: comp, index: None, value: core });
            break 'scan;
        }
    }
    if violation.is_none() {
        'cells: for i in 0..m.grid().n() {
            for (comp, field, _) in [
                (Component::Alpha, &c.alpha, c.core_alpha),
                (Component::Beta, &c.beta, c.core_beta),
                (Component::Gamma, &c.gamma, c.core_gamma),
            ] {
                if field[i] <= S::zero() {
                    violation = Some(CurvatureViolation {
                        component: comp,
                        index: Some(i),
                        value: field[i],
                    });
                    break 'cells;
                }
            }
        }
    }
    Ok(NegativeCurvatureReport {
        passed: violation.is_none(),
        k0: c.max_all(),
        l0: c.min_all(),
        violation,
        curvature: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::validate_smoothness;
    use crate::profile::Topology;
    use std::f64::consts::PI;

    fn grid(n: usize) -> RadialGrid<f64> {
        RadialGrid::new(n).unwrap()
    }

    fn params(ell1: f64, long: f64, s0: f64, eps: f64) -> TwoPiParams<f64> {
        TwoPiParams {
            ell1,
            longitude_len: long,
            s0,
            kappa_prime: None,
            epsilon: eps,
        }
    }

    /// Independent oracle for kappa: bisection on the defining scalar
    /// equation, reimplemented here against the library's solver.
    fn kappa_oracle(ell1: f64, s0: f64) -> f64 {
        let res = |k: f64| 2.0 * PI * (k * s0).sinh() - ell1 * k;
        let (mut lo, mut hi) = (1e-9, 64.0);
        assert!(res(lo) < 0.0 && res(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if res(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn kappa_matches_bisection_oracle() {
        // ell1 = 8, s0 = 1: the oracle lands near 1.2332.
        let oracle = kappa_oracle(8.0, 1.0);
        let solved = solve_kappa(8.0, 1.0).unwrap();
        assert!((solved - oracle).abs() < 1e-10, "{solved} vs {oracle}");
        assert!((solved - 1.2332).abs() < 1e-3);

        let oracle = kappa_oracle(4.0 * PI, 1.0);
        let solved = solve_kappa(4.0 * PI, 1.0).unwrap();
        assert!((solved - oracle).abs() < 1e-9 * oracle);
    }

    #[test]
    fn tube_constructor_matches_examples() {
        let m = hyperbolic_tube(1.0, 1.0, grid(256)).unwrap();
        let rep = validate_negative_curvature(&m).unwrap();
        assert!(rep.passed);
        assert!((rep.k0 - 1.0).abs() < 1e-3 && (rep.l0 - 1.0).abs() < 1e-3);
        assert!(validate_smoothness(&m, 1e-4).passed);

        // b = 4 doubles g pointwise relative to b = 1; f unchanged.
        let m1 = hyperbolic_tube(1.0, 1.0, grid(64)).unwrap();
        let m4 = hyperbolic_tube(4.0, 1.0, grid(64)).unwrap();
        for i in 0..64 {
            assert!((m4.g()[i] - 2.0 * m1.g()[i]).abs() < 1e-14 * m4.g()[i]);
            assert_eq!(m4.f()[i], m1.f()[i]);
        }

        assert!(hyperbolic_tube(-1.0, 1.0, grid(16)).is_err());
        assert!(hyperbolic_tube(1.0, 0.0, grid(16)).is_err());
    }

    #[test]
    fn two_pi_feasibility_gate() {
        // ell1 = 2 pi s0 is the obstruction; just above it succeeds.
        for delta in [0.01, 0.1, 1.0] {
            let ell1 = 2.0 * PI * (1.0 + delta);
            let p = params(ell1, 5.0, 1.0, 0.0);
            assert!(
                make_two_pi_metric(&p, grid(64)).is_ok(),
                "delta = {delta} should be feasible"
            );
        }
        for delta in [0.0, -0.1] {
            let ell1 = 2.0 * PI * (1.0 + delta);
            let p = params(ell1, 5.0, 1.0, 0.0);
            match make_two_pi_metric(&p, grid(64)) {
                Err(XcfError::Infeasible { .. }) => {}
                other => panic!("delta = {delta}: expected Infeasible, got {other:?}"),
            }
        }
        // ell1 = 2 pi with s0 = 1 sits exactly on the obstruction.
        let p = params(2.0 * PI, 5.0, 1.0, 0.0);
        assert!(matches!(
            make_two_pi_metric(&p, grid(64)),
            Err(XcfError::Infeasible { .. })
        ));
    }

    #[test]
    fn two_pi_metric_constant_curvature_case() {
        let p = params(8.0, 5.0, 1.0, 0.0);
        let m = make_two_pi_metric(&p, grid(128)).unwrap();
        let rep = validate_negative_curvature(&m).unwrap();
        assert!(rep.passed);
        let kappa = solve_kappa::<f64>(8.0, 1.0).unwrap();
        let k2 = kappa * kappa;
        assert!((k2 - 1.52).abs() < 0.01, "kappa^2 = {k2}");
        assert!((rep.k0 - k2).abs() < 5e-3, "K0 = {} vs {k2}", rep.k0);
        assert!((rep.l0 - k2).abs() < 5e-3);
        assert!(validate_smoothness(&m, 1e-3).passed);
    }

    /// Boundary interpolation: the r = 1 values recovered from the cell
    /// data match ell1 and the longitude length to discretization error.
    #[test]
    fn two_pi_metric_boundary_interpolation() {
        let p = params(8.0, 5.0, 1.0, 0.05);
        let m = make_two_pi_metric(&p, grid(128)).unwrap();
        let extrap_end = |v: &[f64]| {
            // cubic through the last four cells evaluated at r = 1
            let n = v.len();
            let (y0, y1, y2, y3) = (v[n - 4], v[n - 3], v[n - 2], v[n - 1]);
            // nodes at -3.5,-2.5,-1.5,-0.5 in units of dr, target 0
            (-5.0 * y0 + 21.0 * y1 - 35.0 * y2 + 35.0 * y3) / 16.0
        };
        assert!((extrap_end(m.f()) - 8.0).abs() < 1e-5);
        assert!((extrap_end(m.g()) - 5.0).abs() < 1e-5);
    }

    /// f_s, g_s, f_ss, g_ss all positive at interior cells for every
    /// constructed metric: the monotone-convex criterion for negative
    /// curvature.
    #[test]
    fn constructed_metrics_are_monotone_convex() {
        let profiles = vec![
            hyperbolic_tube(1.0, 1.0, grid(64)).unwrap(),
            hyperbolic_tube(4.0, 1.5, grid(64)).unwrap(),
            make_two_pi_metric(&params(8.0, 5.0, 1.0, 0.0), grid(64)).unwrap(),
            make_two_pi_metric(&params(8.0, 5.0, 1.0, 0.05), grid(64)).unwrap(),
        ];
        for m in &profiles {
            let c = curvatures(m).unwrap();
            // alpha > 0 and gamma > 0 encode f_s g_s > 0 and f_ss > 0;
            // beta > 0 encodes g_ss > 0. g_s > 0 needs its own look.
            assert!(c.min_all() > 0.0);
            let bv = m.g().last().copied().unwrap();
            let gs = crate::profile::d_ds(m, m.g(), crate::stencil::Parity::Even, bv);
            assert!(gs.iter().skip(1).all(|&v| v > 0.0));
        }
    }

    #[test]
    fn perturbed_two_pi_metric_stays_negatively_curved() {
        let p = params(8.0, 5.0, 1.0, 0.05);
        let m = make_two_pi_metric(&p, grid(128)).unwrap();
        let rep = validate_negative_curvature(&m).unwrap();
        assert!(rep.passed);
        // beta is genuinely nonconstant now.
        let c = rep.curvature;
        let spread = c.max_of(Component::Beta) - c.min_of(Component::Beta);
        assert!(spread > 0.01, "beta spread {spread}");

        // A large enough amplitude must be rejected, not clamped.
        let wild = params(8.0, 5.0, 1.0, 40.0);
        assert!(matches!(
            make_two_pi_metric(&wild, grid(128)),
            Err(XcfError::CurvatureSignViolation { .. })
        ));
    }

    #[test]
    fn hand_built_concave_g_fails_with_located_beta() {
        // g = L (1 + 0.5 sin(3 s)): g_ss < 0 from the start while g_s
        // stays positive on s <= 0.5, so beta is the offending component.
        let n = 96;
        let gr = grid(n);
        let s0 = 0.5;
        let f: Vec<f64> = gr.centers().iter().map(|&r| 2.0 * PI * (s0 * r).sinh()).collect();
        let g: Vec<f64> = gr
            .centers()
            .iter()
            .map(|&r| 4.0 * (1.0 + 0.5 * (3.0 * s0 * r).sin()))
            .collect();
        let h = vec![s0; n];
        let m = MetricProfile::new(gr, f, g, h).unwrap();
        let rep = validate_negative_curvature(&m).unwrap();
        assert!(!rep.passed);
        let v = rep.violation.expect("violation located");
        assert_eq!(v.component.name(), "beta");
        assert!(v.value <= 0.0);
    }

    #[test]
    fn cusp_collar_is_hyperbolic_and_refines() {
        let m_len = 2.0 * PI * 1.01;
        let m = cusp_annulus(m_len, 3.0, 1.0, 0.5, grid(128)).unwrap();
        assert_eq!(m.topology(), Topology::Annulus);
        // Boundary value by construction: f(s0) = M at r = 1.
        let last = *m.f().last().unwrap();
        let dr = m.grid().dr();
        // half a cell short of the boundary
        assert!((last - m_len * (-0.25 * dr).exp()).abs() < 1e-12);

        let err = |n: usize| {
            let m = cusp_annulus(m_len, 3.0, 1.0, 0.5, grid(n)).unwrap();
            let c = curvatures(&m).unwrap();
            let dev = |v: &[f64]| v.iter().fold(0.0_f64, |a, &b| a.max((b - 1.0).abs()));
            dev(&c.alpha).max(dev(&c.beta)).max(dev(&c.gamma))
        };
        let (e64, e128) = (err(64), err(128));
        let ratio = e64 / e128;
        assert!(ratio > 2.5 && ratio < 6.0, "refinement ratio {ratio}");

        assert!(cusp_annulus(m_len, 3.0, 1.0, 1.5, grid(64)).is_err());
        assert!(cusp_annulus(m_len, 3.0, 1.0, 0.0, grid(64)).is_err());
    }

    #[test]
    fn s0_below_one_is_rejected_for_two_pi_family() {
        let p = params(8.0, 5.0, 0.8, 0.0);
        assert!(matches!(
            make_two_pi_metric(&p, grid(64)),
            Err(XcfError::InvalidParam(_))
        ));
    }
}
