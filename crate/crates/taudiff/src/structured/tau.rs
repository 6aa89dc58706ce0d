//! τ approximant of a symmetric Toeplitz matrix.
//!
//! τ(T_n) = T_n − H_n, where H_n is the Hankel matrix whose antidiagonals are
//! [t_2, …, t_{n−1}, 0, 0, 0, t_{n−1}, …, t_2]. Every τ matrix is
//! diagonalized by the DST-I matrix S_n, so only its eigenvalues need to be
//! stored; they are recovered from the first column c (c_i = t_{i−1} − t_{i+1},
//! with t_n = t_{n+1} = 0) as the elementwise quotient (S c) / (S e_1).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::structured::{SineTransform, SymmetricToeplitz};

/// Eigenvalues of a τ matrix plus the DST machinery to apply functions of it.
#[derive(Debug, Clone)]
pub struct TauSpectrum {
    n: usize,
    eigenvalues: Vec<f64>,
    dst: SineTransform,
}

impl TauSpectrum {
    /// τ approximant of a symmetric Toeplitz operator.
    pub fn from_toeplitz(t: &SymmetricToeplitz) -> Result<Self> {
        let n = t.n();
        let tc = t.first_col();
        let at = |k: usize| if k < n { tc[k] } else { 0.0 };
        // First column of T − H: c_i = t_{i−1} − t_{i+1} (1-indexed).
        let col: Vec<f64> = (1..=n).map(|i| at(i - 1) - at(i + 1)).collect();
        let dst = SineTransform::new(n)?;
        let num = dst.apply(&col)?;
        let mut e1 = vec![0.0; n];
        e1[0] = 1.0;
        // (S e_1)_k = sqrt(2/(n+1)) sin(πk/(n+1)) has no zero entries.
        let den = dst.apply(&e1)?;
        let eigenvalues = num.iter().zip(&den).map(|(a, b)| a / b).collect();
        Ok(Self {
            n,
            eigenvalues,
            dst,
        })
    }

    /// A τ operator with a prescribed spectrum (diagonal in the DST basis).
    pub fn from_eigenvalues(eigenvalues: Vec<f64>) -> Result<Self> {
        let dst = SineTransform::new(eigenvalues.len())?;
        Ok(Self {
            n: eigenvalues.len(),
            eigenvalues,
            dst,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Solve (shift·I − τ) x = v through the DST diagonalization.
    ///
    /// Fails if any shifted eigenvalue is zero or within 1e-14·max|λ| of it.
    pub fn solve_shifted(&self, shift: f64, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let lam_max = self.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for &lam in &self.eigenvalues {
            let d = shift - lam;
            if d == 0.0 || d.abs() < 1e-14 * lam_max {
                return Err(Error::SingularOperator(format!(
                    "shifted tau eigenvalue {d:e} too close to zero (shift {shift})"
                )));
            }
        }
        let mut hat = self.dst.apply(v)?;
        for (x, lam) in hat.iter_mut().zip(&self.eigenvalues) {
            *x /= shift - lam;
        }
        self.dst.apply(&hat)
    }

    /// Apply (shift·I − τ) through the DST diagonalization.
    pub fn apply_shifted(&self, shift: f64, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut hat = self.dst.apply(v)?;
        for (x, lam) in hat.iter_mut().zip(&self.eigenvalues) {
            *x *= shift - lam;
        }
        self.dst.apply(&hat)
    }
}

/// Dense τ(T) = T − H, assembled literally from the antidiagonal definition.
pub fn dense_tau(t: &SymmetricToeplitz) -> DMatrix<f64> {
    let n = t.n();
    let tc = t.first_col();
    // Antidiagonal index k = i + j runs over 0..=2n−2; entries t_{k+2} on the
    // leading side, mirrored as t_{2n−k} on the trailing side, zero in between.
    let anti = |k: usize| {
        if k + 2 < n {
            tc[k + 2]
        } else if k > n {
            tc[2 * n - k]
        } else {
            0.0
        }
    };
    DMatrix::from_fn(n, n, |i, j| tc[i.abs_diff(j)] - anti(i + j))
}
