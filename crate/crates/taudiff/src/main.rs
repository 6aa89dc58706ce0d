//! Thin command-line front end over the experiment harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use taudiff::experiment::{apply_config_file, run_experiment, ExperimentConfig};
use taudiff::Error;

/// Benchmark harness for the penalized fractional-diffusion solver.
#[derive(Parser, Debug)]
#[command(name = "taudiff", version, about)]
struct Cli {
    /// Configuration file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// solve | spectrum | penalty-scan | convergence-table
    #[arg(long)]
    mode: Option<String>,

    /// Fractional order along x, in (1, 2).
    #[arg(long)]
    alpha1: Option<f64>,

    /// Fractional order along y, in (1, 2).
    #[arg(long)]
    alpha2: Option<f64>,

    /// Diffusivity along x.
    #[arg(long)]
    kx: Option<f64>,

    /// Diffusivity along y.
    #[arg(long)]
    ky: Option<f64>,

    /// Ellipse semi-axis along x (rectangle is (0, 2a) x (0, 2b)).
    #[arg(long)]
    a: Option<f64>,

    /// Ellipse semi-axis along y.
    #[arg(long)]
    b: Option<f64>,

    /// Grid size; repeat for a sweep.
    #[arg(long = "n", action = clap::ArgAction::Append)]
    n: Vec<usize>,

    /// Time-step rule: eq-n | 10n | explicit:<int>
    #[arg(long = "m-rule")]
    m_rule: Option<String>,

    /// Final time.
    #[arg(long = "T")]
    t_final: Option<f64>,

    /// Penalization parameter; repeat for a scan.
    #[arg(long = "eta", action = clap::ArgAction::Append)]
    eta: Vec<f64>,

    /// GMRES restart length.
    #[arg(long)]
    restart: Option<usize>,

    /// GMRES relative residual tolerance.
    #[arg(long)]
    rtol: Option<f64>,

    /// Total inner-iteration cap per solve.
    #[arg(long)]
    maxiter: Option<usize>,

    /// Disable the sine-transform preconditioner.
    #[arg(long = "no-precond")]
    no_precond: bool,

    /// Write the result table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv | json
    #[arg(long)]
    format: Option<String>,

    /// Dump the dense system matrix of the first sweep point (size-capped).
    #[arg(long = "dump-dense")]
    dump_dense: Option<PathBuf>,
}

fn build_config(cli: Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        apply_config_file(&mut cfg, path)?;
    }
    if let Some(v) = cli.mode {
        cfg.mode = v.parse()?;
    }
    if let Some(v) = cli.alpha1 {
        cfg.alpha1 = v;
    }
    if let Some(v) = cli.alpha2 {
        cfg.alpha2 = v;
    }
    if let Some(v) = cli.kx {
        cfg.kx = v;
    }
    if let Some(v) = cli.ky {
        cfg.ky = v;
    }
    if let Some(v) = cli.a {
        cfg.a = v;
    }
    if let Some(v) = cli.b {
        cfg.b = v;
    }
    if !cli.n.is_empty() {
        cfg.n_values = cli.n;
    }
    if let Some(v) = cli.m_rule {
        cfg.m_rule = v.parse()?;
    }
    if let Some(v) = cli.t_final {
        cfg.t_final = v;
    }
    if !cli.eta.is_empty() {
        cfg.etas = cli.eta;
    }
    if let Some(v) = cli.restart {
        cfg.restart = v;
    }
    if let Some(v) = cli.rtol {
        cfg.rtol = v;
    }
    if let Some(v) = cli.maxiter {
        cfg.maxiter = v;
    }
    if cli.no_precond {
        cfg.precondition = false;
    }
    if let Some(v) = cli.out {
        cfg.out = Some(v);
    }
    if let Some(v) = cli.format {
        cfg.format = v.parse()?;
    }
    if let Some(v) = cli.dump_dense {
        cfg.dump_dense = Some(v);
    }
    Ok(cfg)
}

/// Exit codes: 0 success, 1 usage, 2 solver failure, 3 size-cap violation.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_)
        | Error::ParameterDomain(_)
        | Error::DimensionMismatch { .. }
        | Error::Io(_) => 1,
        Error::SizeCap { .. } => 3,
        Error::SingularOperator(_) | Error::NumericBreakdown(_) | Error::StepFailure { .. } => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let cfg = match build_config(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };

    match run_experiment(&cfg) {
        Ok(output) => {
            if cfg.out.is_none() {
                print!("{}", output.table.render(cfg.format));
            }
            if output.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("partial results: {} sweep point(s) failed", output.failures.len());
                for f in &output.failures {
                    eprintln!("  {f}");
                }
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
