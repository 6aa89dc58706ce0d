//! Reproduce the grid-refinement benchmark table: error and iteration
//! columns with and without the preconditioner, CSV on stdout.
//!
//!     cargo run --release --example convergence_table

use taudiff::experiment::{run_experiment, ExperimentConfig, Mode, OutputFormat};

fn main() {
    let cfg = ExperimentConfig {
        mode: Mode::ConvergenceTable,
        n_values: vec![32, 64, 128],
        ..Default::default()
    };
    let out = run_experiment(&cfg).expect("sweep");
    print!("{}", out.table.render(OutputFormat::Csv));

    // The error column halves with each refinement (first-order scheme) and
    // the preconditioned iteration column stays flat while the plain one
    // sits an order of magnitude higher.
    let error_col = out.table.columns.iter().position(|c| *c == "error").unwrap();
    let mut prev: Option<f64> = None;
    for row in &out.table.rows {
        if let taudiff::experiment::Cell::Float(e) = row[error_col] {
            if let Some(p) = prev {
                eprintln!("observed order: {:.3}", (p / e).log2());
            }
            prev = Some(e);
        }
    }
}
