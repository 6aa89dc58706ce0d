//! Dense spectral utilities for the size-capped oracle studies.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Eigenvalues of a (numerically) symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut eigs = sym.symmetric_eigen().eigenvalues.as_slice().to_vec();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Eigenvalues of B⁻¹A for symmetric A and SPD B, ascending.
///
/// Uses the Cholesky similarity B = LLᵀ, eig(B⁻¹A) = eig(L⁻¹AL⁻ᵀ), so the
/// spectrum comes out of a symmetric eigensolve and is guaranteed real.
pub fn spd_pencil_eigenvalues(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>> {
    let chol = b
        .clone()
        .cholesky()
        .ok_or_else(|| Error::SingularOperator("pencil matrix B is not SPD".into()))?;
    let l = chol.l();
    let li_a = l
        .solve_lower_triangular(a)
        .ok_or_else(|| Error::SingularOperator("singular Cholesky factor".into()))?;
    let li_a_t = li_a.transpose();
    let similar = l
        .solve_lower_triangular(&li_a_t)
        .ok_or_else(|| Error::SingularOperator("singular Cholesky factor".into()))?;
    Ok(symmetric_eigenvalues(&similar))
}

/// (min, max) of a nonempty slice.
pub fn min_max(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    })
}
