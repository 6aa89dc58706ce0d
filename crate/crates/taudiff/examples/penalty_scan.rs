//! Scan the penalization parameter and watch the solution on the extension
//! region scale linearly with η.
//!
//!     cargo run --release --example penalty_scan

use taudiff::experiment::{run_experiment, Cell, ExperimentConfig, Mode, OutputFormat};

fn main() {
    let cfg = ExperimentConfig {
        mode: Mode::PenaltyScan,
        kx: 1e-4,
        ky: 1e-4,
        n_values: vec![32],
        etas: vec![1e-4, 1e-5, 1e-6],
        ..Default::default()
    };
    let out = run_experiment(&cfg).expect("scan");
    print!("{}", out.table.render(OutputFormat::Csv));

    let ext_col = out
        .table
        .columns
        .iter()
        .position(|c| *c == "max_extension")
        .unwrap();
    let exts: Vec<f64> = out
        .table
        .rows
        .iter()
        .filter_map(|row| match row[ext_col] {
            Cell::Float(v) => Some(v),
            _ => None,
        })
        .collect();
    for pair in exts.windows(2) {
        eprintln!("eta-decade ratio: {:.3} (expected ~10)", pair[0] / pair[1]);
    }
}
