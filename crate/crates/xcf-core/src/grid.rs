//! Cell-centered radial grid on the unit interval.
//!
//! The radial coordinate r runs over [0, 1] with the core at r = 0 and the
//! boundary torus at r = 1. Cells are centered at r_i = (i + 1/2) dr with
//! dr = 1/n, so no sample point ever sits on the coordinate singularity at
//! the core; parity ghost cells stand in for it.

use crate::error::{Result, XcfError};
use crate::scalar::{from_usize, lit, Scalar};

/// Smallest admissible cell count; below this the core and boundary
/// extrapolation stencils would overlap.
pub const MIN_CELLS: usize = 16;

/// Uniform cell-centered grid in the radial coordinate r in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid<S> {
    n: usize,
    dr: S,
    centers: Vec<S>,
}

impl<S: Scalar> RadialGrid<S> {
    /// Builds a grid with `n` cells. Fails for `n < MIN_CELLS`.
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_CELLS {
            return Err(XcfError::GridTooCoarse { n, min: MIN_CELLS });
        }
        let dr = S::one() / from_usize(n);
        let half = lit::<S>(0.5);
        let centers = (0..n).map(|i| (from_usize::<S>(i) + half) * dr).collect();
        Ok(Self { n, dr, centers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dr(&self) -> S {
        self.dr
    }

    /// Cell centers, strictly increasing inside (0, 1).
    pub fn centers(&self) -> &[S] {
        &self.centers
    }

    pub fn center(&self, i: usize) -> S {
        self.centers[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_grids() {
        assert!(RadialGrid::<f64>::new(15).is_err());
        assert!(RadialGrid::<f64>::new(0).is_err());
        assert!(RadialGrid::<f64>::new(16).is_ok());
    }

    #[test]
    fn centers_cover_open_interval() {
        let g = RadialGrid::<f64>::new(32).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.centers().len(), 32);
        let dr = g.dr();
        assert!((g.center(0) - dr / 2.0).abs() < 1e-15);
        assert!((g.center(31) - (1.0 - dr / 2.0)).abs() < 1e-15);
        for i in 1..32 {
            assert!(g.center(i) > g.center(i - 1));
        }
        assert!(g.center(0) > 0.0 && g.center(31) < 1.0);
    }
}
