//! Shifted Grünwald-Letnikov coefficients for fractional orders in (1, 2).
//!
//! The sequence is generated by the multiplicative recurrence
//! `g_0 = 1`, `g_l = (1 − (α+1)/l) · g_{l−1}`, which is numerically stable
//! on (1, 2) and preserves the exact sign pattern: g_0 = 1, g_1 = −α, and
//! g_2 > g_3 > … > 0 with every partial sum from n ≥ 1 strictly negative.

use crate::error::{Error, Result};

/// Coefficient sequence g_0 .. g_{count−1} for one fractional order.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct GrunwaldSequence {
    alpha: f64,
    coeffs: Vec<f64>,
}

impl GrunwaldSequence {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Compute the first `count` shifted Grünwald-Letnikov coefficients.
///
/// Requires `1 < alpha < 2` and `count >= 2`.
pub fn grunwald_coeffs(alpha: f64, count: usize) -> Result<GrunwaldSequence> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::ParameterDomain(format!(
            "fractional order must lie in (1, 2), got {alpha}"
        )));
    }
    if count < 2 {
        return Err(Error::ParameterDomain(format!(
            "coefficient count must be at least 2, got {count}"
        )));
    }
    let mut coeffs = Vec::with_capacity(count);
    coeffs.push(1.0);
    for l in 1..count {
        let prev = coeffs[l - 1];
        coeffs.push((1.0 - (alpha + 1.0) / l as f64) * prev);
    }
    Ok(GrunwaldSequence { alpha, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_two_terms() {
        // g_0 = 1 (base case), g_1 = -alpha.
        let g = grunwald_coeffs(1.5, 2).unwrap();
        assert_eq!(g.coeffs(), &[1.0, -1.5]);
    }

    #[test]
    fn frozen_four_terms_alpha_15() {
        // Hand evaluation of the recurrence for alpha = 1.5:
        // g_1 = (1 - 2.5)  * 1     = -1.5
        // g_2 = (1 - 1.25) * -1.5  = 0.375
        // g_3 = (1 - 2.5/3)* 0.375 = 0.0625
        let g = grunwald_coeffs(1.5, 4).unwrap();
        let want = [1.0, -1.5, 0.375, 0.0625];
        for (got, want) in g.coeffs().iter().zip(want) {
            assert!((got - want).abs() < 1e-15, "got {got}, want {want}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(grunwald_coeffs(1.0, 4).is_err());
        assert!(grunwald_coeffs(2.0, 4).is_err());
        assert!(grunwald_coeffs(0.5, 4).is_err());
        assert!(grunwald_coeffs(1.5, 1).is_err());
        assert!(grunwald_coeffs(1.5, 0).is_err());
    }

    fn check_invariants(alpha: f64, count: usize) {
        let g = grunwald_coeffs(alpha, count).unwrap();
        let c = g.coeffs();
        assert_eq!(c[0], 1.0);
        assert!((c[1] + alpha).abs() <= 1e-14 * alpha);
        for l in 2..count {
            assert!(c[l] > 0.0, "g[{l}] must be positive for alpha={alpha}");
            if l + 1 < count {
                assert!(c[l] > c[l + 1], "g[{l}] must decrease for alpha={alpha}");
            }
        }
        // Partial sums from n >= 1 are strictly negative and |sum| shrinks.
        let mut sum = c[0] + c[1];
        let mut prev_abs = sum.abs();
        assert!(sum < 0.0);
        for &gl in &c[2..] {
            sum += gl;
            assert!(sum < 0.0, "partial sum must stay negative (alpha={alpha})");
            assert!(sum.abs() < prev_abs, "|partial sum| must shrink");
            prev_abs = sum.abs();
        }
    }

    #[test]
    fn invariants_hold_to_ten_thousand_terms() {
        for alpha in [1.1, 1.4, 1.5, 1.7, 1.9] {
            check_invariants(alpha, 10_000);
        }
    }

    proptest! {
        #[test]
        fn invariants_hold_for_arbitrary_orders(alpha in 1.0001f64..1.9999, count in 2usize..600) {
            check_invariants(alpha, count);
        }
    }
}
