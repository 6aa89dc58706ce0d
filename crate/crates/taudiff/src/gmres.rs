//! Restarted GMRES with optional left preconditioning.
//!
//! The preconditioned solve runs the Arnoldi process on P̂⁻¹A and both the
//! stopping criterion and the reported history monitor the preconditioned
//! relative residual ‖P̂⁻¹(b − Ax_k)‖₂ / ‖P̂⁻¹b‖₂, the quantity MATLAB's
//! `gmres` reports, so iteration counts compare directly with MATLAB-based
//! solvers. Unpreconditioned solves monitor the plain relative residual
//! ‖b − Ax_k‖₂ / ‖b‖₂ (against ‖b − Ax₀‖₂ when b = 0).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::operator::PenalizedOperator;
use crate::precond::TauPreconditioner;

/// Anything that acts linearly on grid vectors.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()>;
}

impl LinearOperator for PenalizedOperator {
    fn dim(&self) -> usize {
        self.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.apply_into(x, y)
    }
}

/// The preconditioner's linear action is the application of P̂⁻¹.
impl LinearOperator for TauPreconditioner {
    fn dim(&self) -> usize {
        self.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.apply_inv_into(x, y)
    }
}

impl LinearOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.ncols() || y.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                got: x.len(),
            });
        }
        let out = self * DVector::from_row_slice(x);
        y.copy_from_slice(out.as_slice());
        Ok(())
    }
}

/// Solver knobs; defaults follow the experiment setup (restart 20, 1e-8).
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub restart: usize,
    pub rtol: f64,
    pub maxiter: usize,
    pub precondition: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            restart: 20,
            rtol: 1e-8,
            maxiter: 500,
            precondition: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restart < 1 {
            return Err(Error::ParameterDomain("restart must be at least 1".into()));
        }
        if !(self.rtol > 0.0 && self.rtol < 1.0) {
            return Err(Error::ParameterDomain(format!(
                "rtol must lie in (0, 1), got {}",
                self.rtol
            )));
        }
        if self.maxiter < self.restart {
            return Err(Error::ParameterDomain(format!(
                "maxiter {} must be at least the restart length {}",
                self.maxiter, self.restart
            )));
        }
        Ok(())
    }
}

/// Outcome of one linear solve.
#[derive(Debug, Clone)]
pub struct IterationReport {
    /// Total inner iterations across all restart cycles.
    pub iterations: usize,
    /// Monitored relative residual at each accepted iterate: the quantity
    /// the stopping criterion tests: ‖b − Ax_k‖₂/‖b‖₂ for plain solves,
    /// ‖P̂⁻¹(b − Ax_k)‖₂/‖P̂⁻¹b‖₂ for preconditioned ones. The final entry is
    /// explicitly recomputed from the returned solution.
    pub residual_history: Vec<f64>,
    pub converged: bool,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn ensure_finite(v: &[f64], what: &str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NumericBreakdown(format!(
            "{what} produced a non-finite value"
        )))
    }
}

/// Solve A x = b by restarted GMRES, optionally left-preconditioned.
///
/// Hitting `maxiter` is reported through `converged = false`, not an error;
/// non-finite operator or preconditioner output is a numeric-breakdown error.
pub fn gmres_solve(
    a: &dyn LinearOperator,
    pinv: Option<&dyn LinearOperator>,
    b: &[f64],
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, IterationReport)> {
    cfg.validate()?;
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    let pinv = if cfg.precondition { pinv } else { None };
    if let Some(p) = pinv {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }

    let mut x = x0.to_vec();
    let mut work = vec![0.0; n];

    // Monitored residual: P̂⁻¹(b − Ax) when preconditioned, b − Ax otherwise.
    let residual = |x: &[f64], work: &mut Vec<f64>| -> Result<Vec<f64>> {
        a.apply(x, work)?;
        ensure_finite(work, "operator")?;
        let raw: Vec<f64> = b.iter().zip(work.iter()).map(|(bi, ai)| bi - ai).collect();
        match pinv {
            None => Ok(raw),
            Some(p) => {
                let mut out = vec![0.0; raw.len()];
                p.apply(&raw, &mut out)?;
                ensure_finite(&out, "preconditioner")?;
                Ok(out)
            }
        }
    };

    let mut r = residual(&x, &mut work)?;
    let r0_norm = norm(&r);
    // Residuals are measured against the monitored right-hand side; a zero
    // rhs falls back to the initial residual so the quotient stays meaningful.
    let denom = {
        let b_norm = match pinv {
            None => norm(b),
            Some(p) => {
                let mut pb = vec![0.0; n];
                p.apply(b, &mut pb)?;
                ensure_finite(&pb, "preconditioner")?;
                norm(&pb)
            }
        };
        if b_norm > 0.0 {
            b_norm
        } else {
            r0_norm
        }
    };
    if r0_norm == 0.0 {
        return Ok((
            x,
            IterationReport {
                iterations: 0,
                residual_history: Vec::new(),
                converged: true,
            },
        ));
    }

    let mut history = Vec::new();
    let mut total_iters = 0usize;
    let m = cfg.restart;
    let mut w = vec![0.0; n];
    let mut z = vec![0.0; n];

    loop {
        let r_norm = norm(&r);
        if r_norm / denom < cfg.rtol {
            return Ok((
                x,
                IterationReport {
                    iterations: total_iters,
                    residual_history: history,
                    converged: true,
                },
            ));
        }
        if total_iters >= cfg.maxiter {
            return Ok((
                x,
                IterationReport {
                    iterations: total_iters,
                    residual_history: history,
                    converged: false,
                },
            ));
        }

        // Arnoldi basis of P̂⁻¹A (or A).
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        let mut h_cols: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut cs = vec![0.0; m];
        let mut sn = vec![0.0; m];
        let mut g = vec![0.0; m + 1];
        g[0] = r_norm;
        basis.push(r.iter().map(|x| x / r_norm).collect());

        let mut k = 0;
        while k < m && total_iters < cfg.maxiter {
            total_iters += 1;

            a.apply(&basis[k], &mut w)?;
            ensure_finite(&w, "operator")?;
            if let Some(p) = pinv {
                p.apply(&w, &mut z)?;
                ensure_finite(&z, "preconditioner")?;
                std::mem::swap(&mut w, &mut z);
            }

            // Modified Gram-Schmidt with one reorthogonalization pass when
            // cancellation is detected.
            let w_norm_before = norm(&w);
            let mut h_col = vec![0.0; k + 2];
            for (j, vj) in basis.iter().enumerate() {
                let hjk = dot(vj, &w);
                h_col[j] = hjk;
                for (wi, vi) in w.iter_mut().zip(vj) {
                    *wi -= hjk * vi;
                }
            }
            let mut w_norm = norm(&w);
            if w_norm < std::f64::consts::FRAC_1_SQRT_2 * w_norm_before {
                for (j, vj) in basis.iter().enumerate() {
                    let c = dot(vj, &w);
                    h_col[j] += c;
                    for (wi, vi) in w.iter_mut().zip(vj) {
                        *wi -= c * vi;
                    }
                }
                w_norm = norm(&w);
            }
            h_col[k + 1] = w_norm;

            let col_scale = norm(&h_col);
            let happy = w_norm <= 1e-14 * col_scale.max(f64::MIN_POSITIVE);
            if !happy {
                basis.push(w.iter().map(|x| x / w_norm).collect());
            }

            // Apply the accumulated Givens rotations, then create the next one.
            for j in 0..k {
                let t = cs[j] * h_col[j] + sn[j] * h_col[j + 1];
                h_col[j + 1] = -sn[j] * h_col[j] + cs[j] * h_col[j + 1];
                h_col[j] = t;
            }
            let (c, s) = {
                let (aa, bb) = (h_col[k], h_col[k + 1]);
                let r = (aa * aa + bb * bb).sqrt();
                if r == 0.0 {
                    (1.0, 0.0)
                } else {
                    (aa / r, bb / r)
                }
            };
            cs[k] = c;
            sn[k] = s;
            h_col[k] = c * h_col[k] + s * h_col[k + 1];
            h_col[k + 1] = 0.0;
            let t = c * g[k] + s * g[k + 1];
            g[k + 1] = -s * g[k] + c * g[k + 1];
            g[k] = t;
            h_cols.push(h_col);

            history.push(g[k + 1].abs() / denom);
            k += 1;

            if happy || g[k].abs() / denom < cfg.rtol {
                break;
            }
        }

        // Back-substitute H y = g and fold the update into x.
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut sum = g[i];
            for (j, yj) in y.iter().enumerate().take(k).skip(i + 1) {
                sum -= h_cols[j][i] * yj;
            }
            if h_cols[i][i] != 0.0 {
                y[i] = sum / h_cols[i][i];
            }
        }
        for (i, yi) in y.iter().enumerate() {
            for (xj, uj) in x.iter_mut().zip(&basis[i]) {
                *xj += yi * uj;
            }
        }

        // Pin the accepted iterate's history entry to the verified residual.
        r = residual(&x, &mut work)?;
        if let Some(last) = history.last_mut() {
            *last = norm(&r) / denom;
        }
    }
}
