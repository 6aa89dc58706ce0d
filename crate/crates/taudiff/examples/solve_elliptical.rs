//! Solve the elliptical-domain benchmark problem once and print the error,
//! iteration counts, penalty behaviour, and phase timings.
//!
//!     cargo run --release --example solve_elliptical

use taudiff::{elliptical_problem, stepper, FractionalParams, GridSpec, SolverConfig};

fn main() {
    let (a, b) = (2.0, 1.0);
    let (alpha1, alpha2) = (1.4, 1.7);
    let (kx, ky) = (1.0, 1.0);
    let n = 64;
    let eta = 1e-5;

    let prob = elliptical_problem(a, b, alpha1, alpha2, kx, ky).expect("problem");
    let grid = GridSpec::new(0.0, 2.0 * a, 0.0, 2.0 * b, n, n, n, 1.0).expect("grid");
    let fp = FractionalParams::new(alpha1, alpha2, kx, ky, &grid).expect("params");
    let cfg = SolverConfig::default();

    println!("ellipse (x-{a})^2/{a}^2 + (y-{b})^2/{b}^2 <= 1 on (0, {})x(0, {})", 2.0 * a, 2.0 * b);
    println!("n1 = n2 = m = {n}, alpha = ({alpha1}, {alpha2}), kx = ky = {kx}, eta = {eta:.0e}\n");

    let report = stepper::run(&prob, &grid, &fp, eta, &cfg).expect("solve");
    println!("relative error on the ellipse:   {:.4e}", report.error_inf.unwrap());
    println!("max |u| on the extension region: {:.4e}", report.max_extension);
    println!(
        "preconditioned GMRES iterations: {:.2} per step ({:.2} after the first)",
        report.avg_iterations(),
        report.avg_iterations_excluding_first()
    );
    println!(
        "residual history of step 1:      {:?}",
        report.step_reports[0]
            .residual_history
            .iter()
            .map(|r| format!("{r:.1e}"))
            .collect::<Vec<_>>()
    );
    let t = report.timings;
    println!(
        "timings: setup {:.1} ms, stepping {:.1} ms, evaluation {:.1} ms",
        t.setup_seconds * 1e3,
        t.step_seconds * 1e3,
        t.evaluate_seconds * 1e3
    );

    // The same solve without the preconditioner needs far more iterations.
    let plain = SolverConfig {
        precondition: false,
        ..cfg
    };
    let report = stepper::run(&prob, &grid, &fp, eta, &plain).expect("plain solve");
    println!(
        "\nwithout preconditioning:         {:.2} iterations per step, stepping {:.1} ms",
        report.avg_iterations(),
        report.timings.step_seconds * 1e3
    );
}
