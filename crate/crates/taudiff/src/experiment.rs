//! Experiment harness: sweep configuration, table building, and CSV/JSON
//! emission for the benchmark modes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gmres::SolverConfig;
use crate::grid::{FractionalParams, GridSpec};
use crate::mask::DomainMask;
use crate::operator::{PenalizedOperator, DENSE_SIZE_CAP};
use crate::precond::TauPreconditioner;
use crate::problem::elliptical_problem;
use crate::spectral;
use crate::stepper;

/// What one invocation computes; modes are mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Run the solver once per sweep point, report error/iterations/timings.
    Solve,
    /// Dense eigenvalue ranges of the preconditioned matrices (size-capped).
    Spectrum,
    /// max |u_η| on the extension region for each η.
    PenaltyScan,
    /// Error and iteration columns over a grid sweep, with and without the
    /// preconditioner.
    ConvergenceTable,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Spectrum => "spectrum",
            Mode::PenaltyScan => "penalty-scan",
            Mode::ConvergenceTable => "convergence-table",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solve" => Ok(Mode::Solve),
            "spectrum" => Ok(Mode::Spectrum),
            "penalty-scan" => Ok(Mode::PenaltyScan),
            "convergence-table" => Ok(Mode::ConvergenceTable),
            other => Err(Error::Usage(format!(
                "unknown mode '{other}' (expected solve | spectrum | penalty-scan | convergence-table)"
            ))),
        }
    }
}

/// Rule mapping a grid size n to the number of time steps m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MRule {
    /// m = n
    EqN,
    /// m = 10 n
    TenN,
    /// Fixed m.
    Explicit(usize),
}

impl MRule {
    pub fn m_for(&self, n: usize) -> usize {
        match self {
            MRule::EqN => n,
            MRule::TenN => 10 * n,
            MRule::Explicit(m) => *m,
        }
    }

    pub fn as_string(&self) -> String {
        match self {
            MRule::EqN => "eq-n".into(),
            MRule::TenN => "10n".into(),
            MRule::Explicit(m) => format!("explicit:{m}"),
        }
    }
}

impl std::str::FromStr for MRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq-n" => Ok(MRule::EqN),
            "10n" => Ok(MRule::TenN),
            other => {
                if let Some(rest) = other.strip_prefix("explicit:") {
                    let m: usize = rest.parse().map_err(|_| {
                        Error::Usage(format!("explicit m-rule needs an integer, got '{rest}'"))
                    })?;
                    if m == 0 {
                        return Err(Error::Usage("explicit m must be positive".into()));
                    }
                    Ok(MRule::Explicit(m))
                } else {
                    Err(Error::Usage(format!(
                        "unknown m-rule '{other}' (expected eq-n | 10n | explicit:<int>)"
                    )))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Usage(format!(
                "unknown format '{other}' (expected csv | json)"
            ))),
        }
    }
}

/// Full description of one experiment invocation.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub alpha1: f64,
    pub alpha2: f64,
    pub kx: f64,
    pub ky: f64,
    pub a: f64,
    pub b: f64,
    pub n_values: Vec<usize>,
    pub m_rule: MRule,
    pub t_final: f64,
    pub etas: Vec<f64>,
    pub restart: usize,
    pub rtol: f64,
    pub maxiter: usize,
    pub precondition: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub dump_dense: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Solve,
            alpha1: 1.4,
            alpha2: 1.7,
            kx: 1.0,
            ky: 1.0,
            a: 2.0,
            b: 1.0,
            n_values: vec![32],
            m_rule: MRule::EqN,
            t_final: 1.0,
            etas: vec![1e-5],
            restart: 20,
            rtol: 1e-8,
            maxiter: 500,
            precondition: true,
            out: None,
            format: OutputFormat::Csv,
            dump_dense: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Usage("the grid sweep list is empty".into()));
        }
        if self.n_values.contains(&0) {
            return Err(Error::Usage("grid sizes must be positive".into()));
        }
        if self.etas.is_empty() {
            return Err(Error::Usage("the eta list is empty".into()));
        }
        if self.etas.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::Usage("eta values must be positive".into()));
        }
        for (name, v) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !(v > 1.0 && v < 2.0) {
                return Err(Error::Usage(format!("{name} must lie in (1, 2), got {v}")));
            }
        }
        for (name, v) in [
            ("kx", self.kx),
            ("ky", self.ky),
            ("a", self.a),
            ("b", self.b),
            ("T", self.t_final),
        ] {
            if !(v > 0.0) {
                return Err(Error::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        let solver = self.solver_config(self.precondition);
        solver.validate().map_err(|e| Error::Usage(e.to_string()))?;
        if self.mode == Mode::Spectrum {
            for &n in &self.n_values {
                if n * n > DENSE_SIZE_CAP {
                    return Err(Error::SizeCap {
                        requested: n * n,
                        cap: DENSE_SIZE_CAP,
                    });
                }
            }
        }
        if self.dump_dense.is_some() {
            let n = self.n_values[0];
            if n * n > DENSE_SIZE_CAP {
                return Err(Error::SizeCap {
                    requested: n * n,
                    cap: DENSE_SIZE_CAP,
                });
            }
        }
        Ok(())
    }

    pub fn solver_config(&self, precondition: bool) -> SolverConfig {
        SolverConfig {
            restart: self.restart,
            rtol: self.rtol,
            maxiter: self.maxiter,
            precondition,
        }
    }

    fn grid(&self, n: usize) -> Result<GridSpec> {
        GridSpec::new(
            0.0,
            2.0 * self.a,
            0.0,
            2.0 * self.b,
            n,
            n,
            self.m_rule.m_for(n),
            self.t_final,
        )
    }
}

/// One table cell; floats are serialized with 17 significant digits in CSV
/// and as native numbers in JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Text(v) => serde_json::Value::from(v.as_str()),
            Cell::Bool(v) => serde_json::Value::from(*v),
        }
    }
}

/// Column-labelled result table; every row carries the full parameter tuple.
#[derive(Debug, Clone)]
pub struct Table {
    pub mode: Mode,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "mode": self.mode.as_str(),
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("table serialization")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Result of a full experiment: the table plus any sweep points that failed.
#[derive(Debug)]
pub struct ExperimentOutput {
    pub table: Table,
    /// Human-readable descriptions of failed sweep points; nonempty means
    /// the table holds partial results.
    pub failures: Vec<String>,
}

fn param_columns() -> Vec<&'static str> {
    vec![
        "alpha1", "alpha2", "kx", "ky", "a", "b", "t_final", "restart", "rtol",
    ]
}

impl ExperimentConfig {
    fn param_cells(&self) -> Vec<Cell> {
        vec![
            Cell::Float(self.alpha1),
            Cell::Float(self.alpha2),
            Cell::Float(self.kx),
            Cell::Float(self.ky),
            Cell::Float(self.a),
            Cell::Float(self.b),
            Cell::Float(self.t_final),
            Cell::Int(self.restart),
            Cell::Float(self.rtol),
        ]
    }
}

/// Execute the configured experiment; writes the table (and the optional
/// dense dump) to disk when paths are configured, and returns it either way.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let mut failures = Vec::new();
    let table = match cfg.mode {
        Mode::Solve => solve_table(cfg, &mut failures)?,
        Mode::Spectrum => spectrum_table(cfg)?,
        Mode::PenaltyScan => penalty_table(cfg, &mut failures)?,
        Mode::ConvergenceTable => convergence_table(cfg, &mut failures)?,
    };

    if let Some(path) = &cfg.dump_dense {
        dump_dense_matrix(cfg, path)?;
    }
    if let Some(path) = &cfg.out {
        std::fs::write(path, table.render(cfg.format))?;
    }
    Ok(ExperimentOutput { table, failures })
}

fn solve_table(cfg: &ExperimentConfig, failures: &mut Vec<String>) -> Result<Table> {
    let mut columns = param_columns();
    columns.extend([
        "precond",
        "n",
        "m",
        "eta",
        "error",
        "avg_iters",
        "avg_iters_after_first",
        "max_extension",
        "steps",
        "seconds_total",
    ]);
    let prob = elliptical_problem(cfg.a, cfg.b, cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky)?;
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        for &eta in &cfg.etas {
            let grid = cfg.grid(n)?;
            let fp = FractionalParams::new(cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky, &grid)?;
            let solver = cfg.solver_config(cfg.precondition);
            match stepper::run(&prob, &grid, &fp, eta, &solver) {
                Ok(report) => {
                    let mut row = cfg.param_cells();
                    row.extend([
                        Cell::Bool(cfg.precondition),
                        Cell::Int(n),
                        Cell::Int(grid.m),
                        Cell::Float(eta),
                        Cell::Float(report.error_inf.unwrap_or(f64::NAN)),
                        Cell::Float(report.avg_iterations()),
                        Cell::Float(report.avg_iterations_excluding_first()),
                        Cell::Float(report.max_extension),
                        Cell::Int(grid.m),
                        Cell::Float(report.timings.total_seconds),
                    ]);
                    rows.push(row);
                }
                Err(e) => failures.push(format!("solve n={n} eta={eta:e}: {e}")),
            }
        }
    }
    Ok(Table {
        mode: Mode::Solve,
        columns,
        rows,
    })
}

fn convergence_table(cfg: &ExperimentConfig, failures: &mut Vec<String>) -> Result<Table> {
    let mut columns = param_columns();
    columns.extend([
        "eta",
        "n",
        "m",
        "error",
        "iters_precond",
        "iters_precond_after_first",
        "iters_plain",
        "iters_plain_after_first",
        "seconds_precond",
        "seconds_plain",
    ]);
    let prob = elliptical_problem(cfg.a, cfg.b, cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky)?;
    let eta = cfg.etas[0];
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        let grid = cfg.grid(n)?;
        let fp = FractionalParams::new(cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky, &grid)?;
        let pre = stepper::run(&prob, &grid, &fp, eta, &cfg.solver_config(true));
        let plain = stepper::run(&prob, &grid, &fp, eta, &cfg.solver_config(false));
        match (pre, plain) {
            (Ok(pre), Ok(plain)) => {
                let mut row = cfg.param_cells();
                row.extend([
                    Cell::Float(eta),
                    Cell::Int(n),
                    Cell::Int(grid.m),
                    Cell::Float(pre.error_inf.unwrap_or(f64::NAN)),
                    Cell::Float(pre.avg_iterations()),
                    Cell::Float(pre.avg_iterations_excluding_first()),
                    Cell::Float(plain.avg_iterations()),
                    Cell::Float(plain.avg_iterations_excluding_first()),
                    Cell::Float(pre.timings.total_seconds),
                    Cell::Float(plain.timings.total_seconds),
                ]);
                rows.push(row);
            }
            (pre, plain) => {
                for (kind, res) in [("precond", pre), ("plain", plain)] {
                    if let Err(e) = res {
                        failures.push(format!("convergence n={n} ({kind}): {e}"));
                    }
                }
            }
        }
    }
    Ok(Table {
        mode: Mode::ConvergenceTable,
        columns,
        rows,
    })
}

fn penalty_table(cfg: &ExperimentConfig, failures: &mut Vec<String>) -> Result<Table> {
    let mut columns = param_columns();
    columns.extend(["precond", "n", "m", "eta", "max_extension", "error"]);
    let prob = elliptical_problem(cfg.a, cfg.b, cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky)?;
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        for &eta in &cfg.etas {
            let grid = cfg.grid(n)?;
            let fp = FractionalParams::new(cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky, &grid)?;
            match stepper::run(&prob, &grid, &fp, eta, &cfg.solver_config(cfg.precondition)) {
                Ok(report) => {
                    let mut row = cfg.param_cells();
                    row.extend([
                        Cell::Bool(cfg.precondition),
                        Cell::Int(n),
                        Cell::Int(grid.m),
                        Cell::Float(eta),
                        Cell::Float(report.max_extension),
                        Cell::Float(report.error_inf.unwrap_or(f64::NAN)),
                    ]);
                    rows.push(row);
                }
                Err(e) => failures.push(format!("penalty n={n} eta={eta:e}: {e}")),
            }
        }
    }
    Ok(Table {
        mode: Mode::PenaltyScan,
        columns,
        rows,
    })
}

fn spectrum_table(cfg: &ExperimentConfig) -> Result<Table> {
    let mut columns = param_columns();
    columns.extend([
        "eta",
        "n",
        "m",
        "pinv_m_min",
        "pinv_m_max",
        "tauinv_a_min",
        "tauinv_a_max",
    ]);
    let prob = elliptical_problem(cfg.a, cfg.b, cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky)?;
    let eta = cfg.etas[0];
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        let grid = cfg.grid(n)?;
        let fp = FractionalParams::new(cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky, &grid)?;
        let mask = DomainMask::build(&grid, |x, y| prob.in_region(x, y), eta)?;
        let op = PenalizedOperator::assemble(&grid, &fp, mask)?;
        let precond = TauPreconditioner::from_operator(&op)?;

        let m_dense = op.dense()?;
        let p_dense = precond.dense_p()?;
        let pm = spectral::spd_pencil_eigenvalues(&m_dense, &p_dense)?;
        let (pm_min, pm_max) = spectral::min_max(&pm);

        let a_neg = -op.dense_a();
        let tau_neg = -precond.dense_tau1(DENSE_SIZE_CAP)?;
        let ta = spectral::spd_pencil_eigenvalues(&a_neg, &tau_neg)?;
        let (ta_min, ta_max) = spectral::min_max(&ta);

        let mut row = cfg.param_cells();
        row.extend([
            Cell::Float(eta),
            Cell::Int(n),
            Cell::Int(grid.m),
            Cell::Float(pm_min),
            Cell::Float(pm_max),
            Cell::Float(ta_min),
            Cell::Float(ta_max),
        ]);
        rows.push(row);
    }
    Ok(Table {
        mode: Mode::Spectrum,
        columns,
        rows,
    })
}

fn dump_dense_matrix(cfg: &ExperimentConfig, path: &Path) -> Result<()> {
    let n = cfg.n_values[0];
    let eta = cfg.etas[0];
    let prob = elliptical_problem(cfg.a, cfg.b, cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky)?;
    let grid = cfg.grid(n)?;
    let fp = FractionalParams::new(cfg.alpha1, cfg.alpha2, cfg.kx, cfg.ky, &grid)?;
    let mask = DomainMask::build(&grid, |x, y| prob.in_region(x, y), eta)?;
    let op = PenalizedOperator::assemble(&grid, &fp, mask)?;
    let m = op.dense()?;
    let mut out = String::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{:.16e}", m[(i, j)]);
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Parse a `key = value` configuration file mirroring the CLI flags.
///
/// Lines starting with `#` and blank lines are ignored; `n` and `eta` take
/// comma-separated lists. Unknown keys are usage errors.
pub fn apply_config_file(cfg: &mut ExperimentConfig, path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!(
                "{}:{}: expected 'key = value', got '{line}'",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| Error::Usage(format!("config key '{key}': invalid {what} '{value}'"));
        match key {
            "mode" => cfg.mode = value.parse()?,
            "alpha1" => cfg.alpha1 = value.parse().map_err(|_| bad("number"))?,
            "alpha2" => cfg.alpha2 = value.parse().map_err(|_| bad("number"))?,
            "kx" => cfg.kx = value.parse().map_err(|_| bad("number"))?,
            "ky" => cfg.ky = value.parse().map_err(|_| bad("number"))?,
            "a" => cfg.a = value.parse().map_err(|_| bad("number"))?,
            "b" => cfg.b = value.parse().map_err(|_| bad("number"))?,
            "n" => {
                cfg.n_values = if value.is_empty() {
                    Vec::new()
                } else {
                    value
                        .split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| bad("integer list")))
                        .collect::<Result<_>>()?
                };
            }
            "m-rule" => cfg.m_rule = value.parse()?,
            "T" => cfg.t_final = value.parse().map_err(|_| bad("number"))?,
            "eta" => {
                cfg.etas = if value.is_empty() {
                    Vec::new()
                } else {
                    value
                        .split(',')
                        .map(|t| t.trim().parse::<f64>().map_err(|_| bad("number list")))
                        .collect::<Result<_>>()?
                };
            }
            "restart" => cfg.restart = value.parse().map_err(|_| bad("integer"))?,
            "rtol" => cfg.rtol = value.parse().map_err(|_| bad("number"))?,
            "maxiter" => cfg.maxiter = value.parse().map_err(|_| bad("integer"))?,
            "precond" => cfg.precondition = value.parse().map_err(|_| bad("boolean"))?,
            "out" => cfg.out = Some(PathBuf::from(value)),
            "format" => cfg.format = value.parse()?,
            "dump-dense" => cfg.dump_dense = Some(PathBuf::from(value)),
            other => {
                return Err(Error::Usage(format!(
                    "unknown config key '{other}' at {}:{}",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_and_rule_parsing() {
        assert_eq!("solve".parse::<Mode>().unwrap(), Mode::Solve);
        assert_eq!(
            "penalty-scan".parse::<Mode>().unwrap(),
            Mode::PenaltyScan
        );
        assert!("bogus".parse::<Mode>().is_err());
        assert_eq!("eq-n".parse::<MRule>().unwrap(), MRule::EqN);
        assert_eq!("10n".parse::<MRule>().unwrap().m_for(8), 80);
        assert_eq!("explicit:12".parse::<MRule>().unwrap().m_for(99), 12);
        assert!("explicit:x".parse::<MRule>().is_err());
        assert!("explicit:0".parse::<MRule>().is_err());
    }

    #[test]
    fn empty_sweep_is_a_usage_error() {
        let cfg = ExperimentConfig {
            n_values: vec![],
            ..Default::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Usage(_))));
    }

    #[test]
    fn spectrum_mode_enforces_dense_cap() {
        let cfg = ExperimentConfig {
            mode: Mode::Spectrum,
            n_values: vec![128],
            ..Default::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn float_cells_use_seventeen_significant_digits() {
        let cell = Cell::Float(std::f64::consts::PI);
        assert_eq!(cell.csv(), "3.1415926535897931e0");
    }

    #[test]
    fn csv_roundtrip_of_small_table() {
        let table = Table {
            mode: Mode::Solve,
            columns: vec!["n", "v"],
            rows: vec![vec![Cell::Int(4), Cell::Float(0.5)]],
        };
        let csv = table.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "n,v");
        assert!(csv.lines().nth(1).unwrap().starts_with("4,5.0000000000000000e-1"));
        let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(json["rows"][0]["n"], 4);
        assert_eq!(json["rows"][0]["v"], 0.5);
    }

    #[test]
    fn config_file_overrides_and_rejects_unknown_keys() {
        let dir = std::env::temp_dir();
        let path = dir.join("taudiff_cfg_test.conf");
        std::fs::write(
            &path,
            "# comment\nmode = penalty-scan\nn = 8, 16\neta = 1e-4, 1e-5\nprecond = false\nT = 2.0\n",
        )
        .unwrap();
        let mut cfg = ExperimentConfig::default();
        apply_config_file(&mut cfg, &path).unwrap();
        assert_eq!(cfg.mode, Mode::PenaltyScan);
        assert_eq!(cfg.n_values, vec![8, 16]);
        assert_eq!(cfg.etas, vec![1e-4, 1e-5]);
        assert!(!cfg.precondition);
        assert_eq!(cfg.t_final, 2.0);

        std::fs::write(&path, "nonsense = 3\n").unwrap();
        assert!(matches!(
            apply_config_file(&mut cfg, &path),
            Err(Error::Usage(_))
        ));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn solve_mode_produces_self_describing_rows() {
        let cfg = ExperimentConfig {
            n_values: vec![8],
            ..Default::default()
        };
        let out = run_experiment(&cfg).unwrap();
        assert!(out.failures.is_empty());
        assert_eq!(out.table.rows.len(), 1);
        assert_eq!(out.table.columns.len(), out.table.rows[0].len());
        // Parameter tuple present in every row.
        assert_eq!(out.table.rows[0][0], Cell::Float(1.4));
        assert_eq!(out.table.rows[0][1], Cell::Float(1.7));
    }

    #[test]
    fn spectrum_mode_rows_stay_inside_bounds() {
        let cfg = ExperimentConfig {
            mode: Mode::Spectrum,
            n_values: vec![8],
            ..Default::default()
        };
        let out = run_experiment(&cfg).unwrap();
        let row = &out.table.rows[0];
        let float_at = |idx: usize| match row[idx] {
            Cell::Float(v) => v,
            _ => panic!("expected float"),
        };
        let base = param_columns().len() + 3;
        for offset in 0..4 {
            let v = float_at(base + offset);
            assert!(v > 0.5 && v < 1.5, "eigenvalue bound {v}");
        }
    }
}
