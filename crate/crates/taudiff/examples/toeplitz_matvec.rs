//! Compare the FFT-based Toeplitz matvec against the naive O(n²) product:
//! identical values, very different cost.
//!
//!     cargo run --release --example toeplitz_matvec

use std::time::Instant;

use taudiff::{grunwald_coeffs, SymmetricToeplitz};

fn naive_matvec(first_col: &[f64], v: &[f64]) -> Vec<f64> {
    let n = first_col.len();
    (0..n)
        .map(|i| (0..n).map(|j| first_col[i.abs_diff(j)] * v[j]).sum())
        .collect()
}

fn main() {
    let alpha = 1.5;

    // Correctness at a small size.
    let g = grunwald_coeffs(alpha, 9).unwrap();
    let t = SymmetricToeplitz::from_grunwald(&g, 8).unwrap();
    let v: Vec<f64> = (0..8).map(|i| (i as f64 * 0.7).sin()).collect();
    let fast = t.matvec(&v).unwrap();
    let slow = naive_matvec(t.first_col(), &v);
    let diff = fast
        .iter()
        .zip(&slow)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("n = 8: max |fft - naive| = {diff:.2e}");

    // Cost at a large size.
    let n = 8192;
    let g = grunwald_coeffs(alpha, n + 1).unwrap();
    let t = SymmetricToeplitz::from_grunwald(&g, n).unwrap();
    let v: Vec<f64> = (0..n).map(|i| (i as f64 * 0.01).cos()).collect();

    let reps = 200;
    let start = Instant::now();
    let mut fast = Vec::new();
    for _ in 0..reps {
        fast = t.matvec(&v).unwrap();
    }
    let fft_time = start.elapsed().as_secs_f64() / reps as f64;

    let start = Instant::now();
    let slow = naive_matvec(t.first_col(), &v);
    let naive_time = start.elapsed().as_secs_f64();

    let diff = fast
        .iter()
        .zip(&slow)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("n = {n}: max |fft - naive| = {diff:.2e}");
    println!(
        "n = {n}: fft matvec {:.3} ms, naive matvec {:.1} ms ({:.0}x)",
        fft_time * 1e3,
        naive_time * 1e3,
        naive_time / fft_time
    );
}
