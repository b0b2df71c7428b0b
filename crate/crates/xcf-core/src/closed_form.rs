//! Closed-form sinh/cosh metric family and its exact derivatives.
//!
//! Every constructed initial metric in this crate belongs to the family
//!
//!     f(s) = (2 pi / kappa) sinh(kappa s),
//!     g(s) = g_amp cosh(kappa' s) exp(eps * eta(s)),
//!
//! with the bump eta(s) = (s/s0)^4 (1 - s/s0)^2, which vanishes to high
//! order at the core (preserving the even extension of g and the core
//! conditions) and to first order at s = s0 (preserving the boundary
//! value and slope). With eps = 0 and kappa' = kappa the curvatures are
//! constantly kappa^2. Analytic derivatives through fourth order make the
//! family usable as an independent oracle for the discrete operators.

use crate::scalar::{lit, Scalar};

/// Parameters of the closed-form family. `g_amp` absorbs the boundary
/// normalization: g(s0) = g_amp cosh(kappa' s0).
#[derive(Debug, Clone, Copy)]
pub struct TwoPiClosedForm<S> {
    pub kappa: S,
    pub kappa_prime: S,
    pub g_amp: S,
    pub s0: S,
    pub epsilon: S,
}

impl<S: Scalar> TwoPiClosedForm<S> {
    /// Hyperbolic geodesic tube around a closed geodesic of length b:
    /// f = 2 pi sinh s, g = sqrt(b) cosh s, constant curvature -1.
    pub fn tube(b: S, s0: S) -> Self {
        Self {
            kappa: S::one(),
            kappa_prime: S::one(),
            g_amp: b.sqrt(),
            s0,
            epsilon: S::zero(),
        }
    }

    pub fn f(&self, s: S) -> S {
        lit::<S>(2.0) * S::PI() / self.kappa * (self.kappa * s).sinh()
    }

    pub fn f_s(&self, s: S) -> S {
        lit::<S>(2.0) * S::PI() * (self.kappa * s).cosh()
    }

    pub fn f_ss(&self, s: S) -> S {
        self.kappa * self.kappa * self.f(s)
    }

    pub fn g(&self, s: S) -> S {
        self.g_amp * (self.kappa_prime * s).cosh() * (self.epsilon * self.eta(s, 0)).exp()
    }

    /// d^k/ds^k of eta for k = 0..=4.
    fn eta(&self, s: S, k: usize) -> S {
        let x = s / self.s0;
        let x2 = x * x;
        let x3 = x2 * x;
        let p = match k {
            0 => x2 * x2 - lit::<S>(2.0) * x2 * x3 + x3 * x3,
            1 => lit::<S>(4.0) * x3 - lit::<S>(10.0) * x2 * x2 + lit::<S>(6.0) * x2 * x3,
            2 => lit::<S>(12.0) * x2 - lit::<S>(40.0) * x3 + lit::<S>(30.0) * x2 * x2,
            3 => lit::<S>(24.0) * x - lit::<S>(120.0) * x2 + lit::<S>(120.0) * x3,
            4 => lit::<S>(24.0) - lit::<S>(240.0) * x + lit::<S>(360.0) * x2,
            _ => unreachable!("eta derivatives implemented through order 4"),
        };
        p / self.s0.powi(k as i32)
    }

    /// u_s = f_s/f = kappa coth(kappa s); diverges like 1/s at the core.
    pub fn u_s(&self, s: S) -> S {
        self.kappa / (self.kappa * s).tanh()
    }

    pub fn u_ss(&self, s: S) -> S {
        let sh = (self.kappa * s).sinh();
        -self.kappa * self.kappa / (sh * sh)
    }

    pub fn u_sss(&self, s: S) -> S {
        let ks = self.kappa * s;
        let sh = ks.sinh();
        lit::<S>(2.0) * self.kappa.powi(3) / (sh * sh * ks.tanh())
    }

    /// v_s = g_s/g.
    pub fn v_s(&self, s: S) -> S {
        self.kappa_prime * (self.kappa_prime * s).tanh() + self.epsilon * self.eta(s, 1)
    }

    pub fn v_ss(&self, s: S) -> S {
        let sech = S::one() / (self.kappa_prime * s).cosh();
        self.kappa_prime * self.kappa_prime * sech * sech + self.epsilon * self.eta(s, 2)
    }

    pub fn v_sss(&self, s: S) -> S {
        let ks = self.kappa_prime * s;
        let sech = S::one() / ks.cosh();
        lit::<S>(-2.0) * self.kappa_prime.powi(3) * sech * sech * ks.tanh()
            + self.epsilon * self.eta(s, 3)
    }

    pub fn v_ssss(&self, s: S) -> S {
        let ks = self.kappa_prime * s;
        let sech = S::one() / ks.cosh();
        let tanh = ks.tanh();
        let s2 = sech * sech;
        self.kappa_prime.powi(4) * (lit::<S>(4.0) * s2 * tanh * tanh - lit::<S>(2.0) * s2 * s2)
            + self.epsilon * self.eta(s, 4)
    }

    pub fn alpha(&self, s: S) -> S {
        self.u_s(s) * self.v_s(s)
    }

    pub fn beta(&self, s: S) -> S {
        let vs = self.v_s(s);
        self.v_ss(s) + vs * vs
    }

    pub fn gamma(&self, _s: S) -> S {
        self.kappa * self.kappa
    }

    pub fn alpha_s(&self, s: S) -> S {
        self.u_ss(s) * self.v_s(s) + self.u_s(s) * self.v_ss(s)
    }

    pub fn alpha_ss(&self, s: S) -> S {
        self.u_sss(s) * self.v_s(s)
            + lit::<S>(2.0) * self.u_ss(s) * self.v_ss(s)
            + self.u_s(s) * self.v_sss(s)
    }

    pub fn beta_s(&self, s: S) -> S {
        self.v_sss(s) + lit::<S>(2.0) * self.v_s(s) * self.v_ss(s)
    }

    pub fn beta_ss(&self, s: S) -> S {
        let vss = self.v_ss(s);
        self.v_ssss(s) + lit::<S>(2.0) * vss * vss + lit::<S>(2.0) * self.v_s(s) * self.v_sss(s)
    }

    /// Core limits: alpha and beta tend to kappa'^2, gamma to kappa^2.
    pub fn core_alpha(&self) -> S {
        self.kappa_prime * self.kappa_prime
    }
}
