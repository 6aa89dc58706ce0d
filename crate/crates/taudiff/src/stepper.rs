//! Implicit-Euler time stepping for the penalized scheme.
//!
//! Each step solves (I − A + D) u^k = u^{k−1} + dt·f̂(u^{k−1}, ·, t_{k−1});
//! the lagged source makes every step a single linear solve. The inner
//! solver's initial guess is u^{k−1} at the first step and the linear
//! extrapolation 2u^{k−1} − u^{k−2} afterwards.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::gmres::{gmres_solve, IterationReport, LinearOperator, SolverConfig};
use crate::grid::{FractionalParams, GridSpec};
use crate::mask::DomainMask;
use crate::operator::PenalizedOperator;
use crate::precond::TauPreconditioner;
use crate::problem::ProblemDef;

/// Solution state after k completed steps.
#[derive(Debug, Clone)]
pub struct TimeStepState {
    /// Completed step count; time = k·dt.
    pub k: usize,
    pub time: f64,
    /// u^k on the interior nodes, x-fastest.
    pub u: Vec<f64>,
    /// u^{k−1}, absent before the first step.
    pub u_prev: Option<Vec<f64>>,
}

/// Evaluate the zero-extended initial value on the interior nodes.
pub fn initial_state(grid: &GridSpec, prob: &ProblemDef) -> TimeStepState {
    let mut u = Vec::with_capacity(grid.n_unknowns());
    for j in 1..=grid.n2 {
        let y = grid.y(j);
        for i in 1..=grid.n1 {
            u.push(prob.initial(grid.x(i), y));
        }
    }
    TimeStepState {
        k: 0,
        time: 0.0,
        u,
        u_prev: None,
    }
}

/// Advance one implicit step; a non-convergent inner solve is a step failure
/// carrying the solver report.
pub fn step(
    state: &TimeStepState,
    op: &PenalizedOperator,
    precond: Option<&TauPreconditioner>,
    prob: &ProblemDef,
    grid: &GridSpec,
    cfg: &SolverConfig,
) -> Result<(TimeStepState, IterationReport)> {
    let dt = grid.dt();
    let t_prev = state.time;
    let n = grid.n_unknowns();
    if state.u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.u.len(),
        });
    }

    let mut rhs = Vec::with_capacity(n);
    let mut idx = 0;
    for j in 1..=grid.n2 {
        let y = grid.y(j);
        for i in 1..=grid.n1 {
            let u = state.u[idx];
            rhs.push(u + dt * prob.source(u, grid.x(i), y, t_prev));
            idx += 1;
        }
    }

    let guess: Vec<f64> = match &state.u_prev {
        None => state.u.clone(),
        Some(prev) => state
            .u
            .iter()
            .zip(prev)
            .map(|(u, p)| 2.0 * u - p)
            .collect(),
    };

    let pinv = precond.map(|p| p as &dyn LinearOperator);
    let (u_next, report) = gmres_solve(op, pinv, &rhs, &guess, cfg)?;
    if !report.converged {
        return Err(Error::StepFailure {
            step: state.k + 1,
            report,
        });
    }

    let k = state.k + 1;
    Ok((
        TimeStepState {
            k,
            time: k as f64 * dt,
            u: u_next,
            u_prev: Some(state.u.clone()),
        },
        report,
    ))
}

/// Wall-clock breakdown of one `run`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimings {
    /// Operator, coefficient, and preconditioner assembly.
    pub setup_seconds: f64,
    /// All time steps (right-hand sides plus inner solves).
    pub step_seconds: f64,
    /// Error norms and extension scan at the final time.
    pub evaluate_seconds: f64,
    pub total_seconds: f64,
}

/// Everything a benchmark table needs from one solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub step_reports: Vec<IterationReport>,
    /// ‖u_e − u_η‖_∞ / ‖u_e‖_∞ over the nodes inside Ω, when an exact
    /// solution is available.
    pub error_inf: Option<f64>,
    /// max |u_η| over the extension nodes.
    pub max_extension: f64,
    pub final_u: Vec<f64>,
    pub timings: PhaseTimings,
}

impl SolveReport {
    pub fn total_iterations(&self) -> usize {
        self.step_reports.iter().map(|r| r.iterations).sum()
    }

    /// Total inner iterations divided by the number of steps.
    pub fn avg_iterations(&self) -> f64 {
        if self.step_reports.is_empty() {
            0.0
        } else {
            self.total_iterations() as f64 / self.step_reports.len() as f64
        }
    }

    /// Average over all steps after the first (the first step starts from
    /// u⁰ with no extrapolation history and often needs extra iterations).
    pub fn avg_iterations_excluding_first(&self) -> f64 {
        if self.step_reports.len() < 2 {
            return self.avg_iterations();
        }
        let tail: usize = self.step_reports[1..].iter().map(|r| r.iterations).sum();
        tail as f64 / (self.step_reports.len() - 1) as f64
    }
}

/// Run the full m-step solve and collect the benchmark metrics.
pub fn run(
    prob: &ProblemDef,
    grid: &GridSpec,
    fp: &FractionalParams,
    eta: f64,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    let t_start = Instant::now();
    let mask = DomainMask::build(grid, |x, y| prob.in_region(x, y), eta)?;
    let op = PenalizedOperator::assemble(grid, fp, mask)?;
    let precond = if cfg.precondition {
        Some(TauPreconditioner::from_operator(&op)?)
    } else {
        None
    };
    let setup_seconds = t_start.elapsed().as_secs_f64();

    let t_steps = Instant::now();
    let mut state = initial_state(grid, prob);
    let mut step_reports = Vec::with_capacity(grid.m);
    for _ in 0..grid.m {
        let (next, report) = step(&state, &op, precond.as_ref(), prob, grid, cfg)?;
        step_reports.push(report);
        state = next;
    }
    let step_seconds = t_steps.elapsed().as_secs_f64();

    let t_eval = Instant::now();
    let inside = op.mask().inside();
    let mut max_extension = 0.0f64;
    for (idx, &is_in) in inside.iter().enumerate() {
        if !is_in {
            max_extension = max_extension.max(state.u[idx].abs());
        }
    }
    let error_inf = if prob.has_exact() {
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        let mut idx = 0;
        for j in 1..=grid.n2 {
            let y = grid.y(j);
            for i in 1..=grid.n1 {
                if inside[idx] {
                    let ue = prob.exact(grid.x(i), y, grid.t_final).unwrap();
                    num = num.max((ue - state.u[idx]).abs());
                    den = den.max(ue.abs());
                }
                idx += 1;
            }
        }
        (den > 0.0).then(|| num / den)
    } else {
        None
    };
    let evaluate_seconds = t_eval.elapsed().as_secs_f64();

    Ok(SolveReport {
        step_reports,
        error_inf,
        max_extension,
        final_u: state.u,
        timings: PhaseTimings {
            setup_seconds,
            step_seconds,
            evaluate_seconds,
            total_seconds: t_start.elapsed().as_secs_f64(),
        },
    })
}
