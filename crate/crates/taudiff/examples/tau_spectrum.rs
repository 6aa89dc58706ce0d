//! Build the τ approximant of a fractional stencil, inspect its spectrum,
//! and round-trip a shifted resolvent solve through the sine transform.
//!
//!     cargo run --release --example tau_spectrum

use taudiff::{grunwald_coeffs, SineTransform, SymmetricToeplitz, TauSpectrum};

fn main() {
    let n = 16;
    for alpha in [1.1, 1.5, 1.9] {
        let g = grunwald_coeffs(alpha, n + 1).unwrap();
        let t = SymmetricToeplitz::from_grunwald(&g, n).unwrap();
        let tau = TauSpectrum::from_toeplitz(&t).unwrap();
        let (min, max) = tau
            .eigenvalues()
            .iter()
            .fold((f64::MAX, f64::MIN), |(lo, hi), &l| (lo.min(l), hi.max(l)));
        println!("alpha = {alpha}: tau eigenvalues in [{min:.4}, {max:.4}] (all negative)");
    }

    // The DST is orthogonal and symmetric: applying it twice is the identity.
    let s = SineTransform::new(n).unwrap();
    let v: Vec<f64> = (0..n).map(|i| (0.3 * i as f64).sin()).collect();
    let twice = s.apply(&s.apply(&v).unwrap()).unwrap();
    let diff = twice
        .iter()
        .zip(&v)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("DST involution error: {diff:.2e}");

    // Resolvent solve: (shift I - tau) x = v, then apply the operator back.
    let g = grunwald_coeffs(1.5, n + 1).unwrap();
    let t = SymmetricToeplitz::from_grunwald(&g, n).unwrap();
    let tau = TauSpectrum::from_toeplitz(&t).unwrap();
    let x = tau.solve_shifted(1.0, &v).unwrap();
    let back = tau.apply_shifted(1.0, &x).unwrap();
    let diff = back
        .iter()
        .zip(&v)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("resolvent round-trip error: {diff:.2e}");
}
