//! Ghost-cell extension and centered differences on the radial grid.
//!
//! Fields live at the n cell centers. Differencing extends them by two
//! ghost layers per side:
//!
//! * core side, solid torus: mirror reflection with the field's parity
//!   (odd fields flip sign, even fields copy), so the discrete operators
//!   preserve parity exactly;
//! * core side, annulus (no core): one-sided cubic extrapolation;
//! * outer side: cubic extrapolation through the outermost cells, pinned
//!   to the Dirichlet value at r = 1 when one is prescribed.

use crate::scalar::{lit, Scalar};

/// Reflection symmetry of a radial field across the core circle r = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Flips sign across the core (f behaves like this).
    Odd,
    /// Mirrors across the core (g and h behave like this).
    Even,
}

/// Treatment of the inner edge when building ghost cells.
#[derive(Debug, Clone, Copy)]
pub(crate) enum InnerGhost {
    Parity(Parity),
    Open,
}

/// Treatment of the outer edge at r = 1.
#[derive(Debug, Clone, Copy)]
pub enum OuterGhost<S> {
    /// A prescribed boundary value at r = 1; ghosts interpolate through it.
    Dirichlet(S),
    /// No boundary datum; ghosts extrapolate the outermost cells.
    Extrapolate,
}

/// Offset of cell 0 inside an extended array.
pub(crate) const EXT: usize = 2;

/// Extends a cell-centered field by two ghost layers on each side.
///
/// Returns a vector of length n + 4 with `out[i + EXT] = field[i]`.
pub(crate) fn ghost_extend<S: Scalar>(
    field: &[S],
    inner: InnerGhost,
    outer: OuterGhost<S>,
) -> Vec<S> {
    let n = field.len();
    debug_assert!(n >= 4);
    let mut out = vec![S::zero(); n + 4];
    out[EXT..EXT + n].copy_from_slice(field);

    match inner {
        InnerGhost::Parity(p) => {
            let sign = match p {
                Parity::Odd => -S::one(),
                Parity::Even => S::one(),
            };
            out[1] = sign * field[0];
            out[0] = sign * field[1];
        }
        InnerGhost::Open => {
            let (y0, y1, y2, y3) = (field[0], field[1], field[2], field[3]);
            let four = lit::<S>(4.0);
            out[1] = four * y0 - lit::<S>(6.0) * y1 + four * y2 - y3;
            out[0] = lit::<S>(10.0) * y0 - lit::<S>(20.0) * y1 + lit::<S>(15.0) * y2
                - lit::<S>(4.0) * y3;
        }
    }

    match outer {
        OuterGhost::Dirichlet(b) => {
            // Cubic through the three outermost cells and the point (1, b),
            // evaluated at the two ghost centers 1 + dr/2 and 1 + 3dr/2.
            let (y0, y1, y2) = (field[n - 3], field[n - 2], field[n - 1]);
            out[n + 2] = lit::<S>(-0.2) * y0 + y1 - lit::<S>(3.0) * y2 + lit::<S>(3.2) * b;
            out[n + 3] = lit::<S>(-1.8) * y0 + lit::<S>(8.0) * y1 - lit::<S>(18.0) * y2
                + lit::<S>(12.8) * b;
        }
        OuterGhost::Extrapolate => {
            let (y0, y1, y2, y3) = (field[n - 4], field[n - 3], field[n - 2], field[n - 1]);
            let four = lit::<S>(4.0);
            out[n + 2] = -y0 + four * y1 - lit::<S>(6.0) * y2 + four * y3;
            out[n + 3] = lit::<S>(-4.0) * y0 + lit::<S>(15.0) * y1 - lit::<S>(20.0) * y2
                + lit::<S>(10.0) * y3;
        }
    }

    out
}

/// Centered first difference of an extended field.
///
/// Input has length n + 4; output has length n + 2 and carries the
/// derivative at cells -1..=n, i.e. `out[j]` belongs to cell `j - 1`.
pub(crate) fn d_dr_extended<S: Scalar>(ext: &[S], dr: S) -> Vec<S> {
    let m = ext.len() - 2;
    let inv2 = S::one() / (lit::<S>(2.0) * dr);
    (0..m).map(|j| (ext[j + 2] - ext[j]) * inv2).collect()
}

/// Weights of the quadratic-in-r^2 extrapolation of an even quantity from
/// the first three cell centers to r = 0.
pub(crate) fn even_core_weights<S: Scalar>() -> [S; 3] {
    [lit(75.0 / 64.0), lit(-25.0 / 128.0), lit(3.0 / 128.0)]
}

/// Extrapolates an even field to the core from its first three cells.
pub(crate) fn extrapolate_even_to_core<S: Scalar>(field: &[S]) -> S {
    let w = even_core_weights::<S>();
    w[0] * field[0] + w[1] * field[1] + w[2] * field[2]
}
