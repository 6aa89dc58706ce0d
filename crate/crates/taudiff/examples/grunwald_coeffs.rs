//! Print the shifted Grünwald-Letnikov coefficients for a few fractional
//! orders and verify their sign structure numerically.
//!
//!     cargo run --release --example grunwald_coeffs

use taudiff::grunwald_coeffs;

fn main() {
    for alpha in [1.2, 1.5, 1.8] {
        let g = grunwald_coeffs(alpha, 10).expect("valid order");
        println!("alpha = {alpha}");
        print!("  g_l:          ");
        for c in g.coeffs() {
            print!("{c:>12.6} ");
        }
        println!();
        print!("  partial sums: ");
        let mut sum = 0.0;
        for c in g.coeffs() {
            sum += c;
            print!("{sum:>12.6} ");
        }
        println!("\n");
    }

    // The tail terms are positive and the partial sums stay negative, so the
    // stencil matrix is diagonally dominant at every size.
    let g = grunwald_coeffs(1.5, 100_000).unwrap();
    let sum: f64 = g.coeffs().iter().sum();
    println!("sum of the first 1e5 coefficients at alpha = 1.5: {sum:.3e} (tends to 0 from below)");
}
