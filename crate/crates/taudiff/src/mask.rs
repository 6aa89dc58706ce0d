//! Domain indicator mask and the penalty diagonal it induces.

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Indicator of Ω on the interior grid nodes plus the penalization strength.
///
/// Unknowns are ordered x-fastest: linear index = i + j·n1 for interior node
/// (x_{i+1}, y_{j+1}). The induced diagonal D has entry 0 where a node lies
/// inside Ω and dt/η where it lies in the extension region.
#[derive(Debug, Clone)]
pub struct DomainMask {
    n1: usize,
    n2: usize,
    inside: Vec<bool>,
    eta: f64,
    penalty: f64,
}

impl DomainMask {
    /// Evaluate a membership predicate on every interior node.
    ///
    /// Membership is whatever the predicate says; closed regions should use
    /// non-strict inequalities so nodes exactly on ∂Ω count as inside.
    pub fn build<F>(grid: &GridSpec, region: F, eta: f64) -> Result<Self>
    where
        F: Fn(f64, f64) -> bool,
    {
        if !(eta > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "penalization parameter must be positive, got {eta}"
            )));
        }
        let (n1, n2) = (grid.n1, grid.n2);
        let mut inside = Vec::with_capacity(n1 * n2);
        for j in 1..=n2 {
            let y = grid.y(j);
            for i in 1..=n1 {
                inside.push(region(grid.x(i), y));
            }
        }
        Ok(Self {
            n1,
            n2,
            inside,
            eta,
            penalty: grid.dt() / eta,
        })
    }

    /// A mask from raw parts; `inside` is x-fastest of length n1·n2.
    pub fn from_parts(n1: usize, n2: usize, inside: Vec<bool>, eta: f64, dt: f64) -> Result<Self> {
        if inside.len() != n1 * n2 {
            return Err(Error::DimensionMismatch {
                expected: n1 * n2,
                got: inside.len(),
            });
        }
        if !(eta > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "penalization parameter must be positive, got {eta}"
            )));
        }
        Ok(Self {
            n1,
            n2,
            inside,
            eta,
            penalty: dt / eta,
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }

    /// Indicator slice in the x-fastest unknown ordering.
    pub fn inside(&self) -> &[bool] {
        &self.inside
    }

    /// Membership of interior node (i, j), zero-based in 0..n1 × 0..n2.
    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.inside[i + j * self.n1]
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// dt/η, the diagonal value on extension nodes.
    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    /// The diagonal of D = (dt/η)·Φ_d as a vector.
    pub fn diagonal(&self) -> Vec<f64> {
        self.inside
            .iter()
            .map(|&inside| if inside { 0.0 } else { self.penalty })
            .collect()
    }

    pub fn count_inside(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_8() -> GridSpec {
        GridSpec::new(0.0, 4.0, 0.0, 2.0, 8, 8, 8, 1.0).unwrap()
    }

    #[test]
    fn full_rectangle_has_zero_penalty_diagonal() {
        let mask = DomainMask::build(&grid_8(), |_, _| true, 1e-5).unwrap();
        assert_eq!(mask.count_inside(), 64);
        assert!(mask.diagonal().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn empty_region_penalizes_everywhere() {
        let grid = grid_8();
        let mask = DomainMask::build(&grid, |_, _| false, 1e-3).unwrap();
        assert_eq!(mask.count_inside(), 0);
        let want = grid.dt() / 1e-3;
        assert!(mask.diagonal().iter().all(|&d| (d - want).abs() < 1e-15));
    }

    #[test]
    fn ellipse_mask_matches_pointwise_predicate() {
        let grid = grid_8();
        let ellipse =
            |x: f64, y: f64| (x - 2.0) * (x - 2.0) / 4.0 + (y - 1.0) * (y - 1.0) <= 1.0;
        let mask = DomainMask::build(&grid, ellipse, 1e-5).unwrap();
        for j in 0..8 {
            for i in 0..8 {
                let want = ellipse(grid.x(i + 1), grid.y(j + 1));
                assert_eq!(mask.is_inside(i, j), want, "node ({i}, {j})");
                assert_eq!(mask.inside()[i + j * 8], want);
            }
        }
        // The ellipse neither fills nor misses the whole rectangle.
        assert!(mask.count_inside() > 0 && mask.count_inside() < 64);
    }

    #[test]
    fn rejects_nonpositive_eta() {
        assert!(DomainMask::build(&grid_8(), |_, _| true, 0.0).is_err());
        assert!(DomainMask::build(&grid_8(), |_, _| true, -1.0).is_err());
    }

    #[test]
    fn penalty_is_dt_over_eta() {
        let grid = grid_8();
        let mask = DomainMask::build(&grid, |x, _| x < 2.0, 1e-4).unwrap();
        assert!((mask.penalty() - grid.dt() / 1e-4).abs() < 1e-18);
    }
}
