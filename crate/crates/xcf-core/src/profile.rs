//! Radial metric profiles on the solid torus.
//!
//! A rotationally symmetric diagonal metric
//!
//!     G = f^2(r) dmu^2 + g^2(r) dlambda^2 + h^2(r) dr^2,   mu, lambda in [0, 1)
//!
//! is stored through the three component fields sampled at cell centers.
//! Across the core f extends odd and g, h extend even; smoothness of the
//! metric additionally requires the core slope f_r(0)/h(0) = 2*pi.

use crate::error::{Result, XcfError};
use crate::grid::RadialGrid;
use crate::scalar::{lit, to_f64, Scalar};
use crate::stencil::{d_dr_extended, ghost_extend, InnerGhost, OuterGhost, Parity, EXT};

/// Spatial domain the profile lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Solid torus: r = 0 is the core circle, fields obey parity there.
    SolidTorus,
    /// Annular collar with no core; both edges are ordinary boundaries.
    Annulus,
}

/// Grid-sampled metric components f, g, h with their parity metadata.
#[derive(Debug, Clone)]
pub struct MetricProfile<S> {
    grid: RadialGrid<S>,
    f: Vec<S>,
    g: Vec<S>,
    h: Vec<S>,
    topology: Topology,
}

impl<S: Scalar> MetricProfile<S> {
    /// Builds a solid-torus profile, checking lengths and strict positivity.
    pub fn new(grid: RadialGrid<S>, f: Vec<S>, g: Vec<S>, h: Vec<S>) -> Result<Self> {
        Self::build(grid, f, g, h, Topology::SolidTorus)
    }

    /// Builds a coreless annulus profile (used by the cusp collar).
    pub fn new_annulus(grid: RadialGrid<S>, f: Vec<S>, g: Vec<S>, h: Vec<S>) -> Result<Self> {
        Self::build(grid, f, g, h, Topology::Annulus)
    }

    fn build(
        grid: RadialGrid<S>,
        f: Vec<S>,
        g: Vec<S>,
        h: Vec<S>,
        topology: Topology,
    ) -> Result<Self> {
        let n = grid.n();
        for (name, v) in [("f", &f), ("g", &g), ("h", &h)] {
            if v.len() != n {
                return Err(XcfError::InvalidParam(format!(
                    "{name} has {} samples, grid has {n} cells",
                    v.len()
                )));
            }
            for (i, &x) in v.iter().enumerate() {
                if !x.is_finite() || x <= S::zero() {
                    return Err(XcfError::NonFinite { field: name, index: i });
                }
            }
        }
        Ok(Self { grid, f, g, h, topology })
    }

    /// Assembles a profile whose positivity the caller has already checked.
    pub(crate) fn from_parts_unchecked(
        grid: RadialGrid<S>,
        f: Vec<S>,
        g: Vec<S>,
        h: Vec<S>,
        topology: Topology,
    ) -> Self {
        Self { grid, f, g, h, topology }
    }

    pub fn grid(&self) -> &RadialGrid<S> {
        &self.grid
    }

    pub fn f(&self) -> &[S] {
        &self.f
    }

    pub fn g(&self) -> &[S] {
        &self.g
    }

    pub fn h(&self) -> &[S] {
        &self.h
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Arclength s(r_i) from the core to each cell center, plus the total
    /// s1 = s(1) including the half cell up to the boundary.
    ///
    /// Midpoint-rule cumulative sum of h dr: each full cell below r_i
    /// contributes h_j dr and the cell containing r_i contributes
    /// h_i dr / 2. Strictly increasing because h > 0.
    pub fn arclength(&self) -> (Vec<S>, S) {
        let n = self.grid.n();
        let dr = self.grid.dr();
        let half = lit::<S>(0.5);
        let mut s = Vec::with_capacity(n);
        let mut below = S::zero();
        for i in 0..n {
            s.push(below + half * self.h[i] * dr);
            below += self.h[i] * dr;
        }
        (s, below)
    }

    /// Radial density of the volume form: dV = f g h dmu dlambda dr, so the
    /// weight against dr is the pointwise product f g h.
    pub fn volume_weight(&self) -> Vec<S> {
        (0..self.grid.n())
            .map(|i| self.f[i] * self.g[i] * self.h[i])
            .collect()
    }

    /// Logarithms of the metric components, the (u, v, w) picture.
    /// Diagnostic only; the core value of u diverges so the solid-torus
    /// samples near r = 0 are large and negative but finite.
    pub fn log_fields(&self) -> (Vec<S>, Vec<S>, Vec<S>) {
        let ln = |v: &[S]| v.iter().map(|x| x.ln()).collect();
        (ln(&self.f), ln(&self.g), ln(&self.h))
    }

    pub(crate) fn inner_ghost(&self, parity: Parity) -> InnerGhost {
        match self.topology {
            Topology::SolidTorus => InnerGhost::Parity(parity),
            Topology::Annulus => InnerGhost::Open,
        }
    }

    /// h extended by one ghost layer per side, for dividing r-derivatives.
    pub(crate) fn h_extended(&self, outer: OuterGhost<S>) -> Vec<S> {
        let ext = ghost_extend(&self.h, self.inner_ghost(Parity::Even), outer);
        ext[1..ext.len() - 1].to_vec()
    }

    /// First and second arclength derivatives of a field at every cell.
    ///
    /// Both applications of d/ds = (1/h) d/dr use centered differences on
    /// ghost-extended data, which keeps the discrete parity exact: an odd
    /// field has an even derivative and vice versa.
    pub(crate) fn s_derivatives(
        &self,
        field: &[S],
        parity: Parity,
        outer_field: OuterGhost<S>,
        h_ext: &[S],
    ) -> (Vec<S>, Vec<S>) {
        let n = self.grid.n();
        let dr = self.grid.dr();
        let ext = ghost_extend(field, self.inner_ghost(parity), outer_field);
        let mut d1_ext = d_dr_extended(&ext, dr); // cells -1..=n
        for (j, v) in d1_ext.iter_mut().enumerate() {
            *v = *v / h_ext[j];
        }
        let inv2dr = S::one() / (lit::<S>(2.0) * dr);
        let mut d1 = Vec::with_capacity(n);
        let mut d2 = Vec::with_capacity(n);
        for i in 0..n {
            d1.push(d1_ext[i + 1]);
            d2.push((d1_ext[i + 2] - d1_ext[i]) * inv2dr / self.h[i]);
        }
        (d1, d2)
    }
}

/// Arclength derivative d/ds = (1/h) d/dr of a cell-centered field.
///
/// `boundary_value` is the field's Dirichlet value at r = 1; the core side
/// is handled by the parity (or open) ghost construction.
pub fn d_ds<S: Scalar>(
    m: &MetricProfile<S>,
    field: &[S],
    parity: Parity,
    boundary_value: S,
) -> Vec<S> {
    d_ds_with(m, field, parity, OuterGhost::Dirichlet(boundary_value))
}

/// Like [`d_ds`] but with a caller-chosen outer ghost treatment; used for
/// derived quantities such as curvatures that carry no boundary datum.
pub fn d_ds_with<S: Scalar>(
    m: &MetricProfile<S>,
    field: &[S],
    parity: Parity,
    outer: OuterGhost<S>,
) -> Vec<S> {
    let h_ext = m.h_extended(OuterGhost::Extrapolate);
    let ext = ghost_extend(field, m.inner_ghost(parity), outer);
    let n = m.grid().n();
    let dr = m.grid().dr();
    let inv2dr = S::one() / (lit::<S>(2.0) * dr);
    (0..n)
        .map(|i| (ext[i + EXT + 1] - ext[i + EXT - 1]) * inv2dr / h_ext[i + 1])
        .collect()
}

/// Rescales all three metric components by c, the discrete form of the
/// homothety G -> c^2 G.
pub fn scale_profile<S: Scalar>(m: &MetricProfile<S>, c: S) -> Result<MetricProfile<S>> {
    if !(c > S::zero()) {
        return Err(XcfError::InvalidParam(format!(
            "scale factor must be positive, got {}",
            to_f64(c)
        )));
    }
    let mul = |v: &[S]| v.iter().map(|&x| c * x).collect();
    MetricProfile::build(
        m.grid().clone(),
        mul(m.f()),
        mul(m.g()),
        mul(m.h()),
        m.topology(),
    )
}
