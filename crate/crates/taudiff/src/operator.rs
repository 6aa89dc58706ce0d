//! The penalized system operator M = I − A + D acting matrix-free.
//!
//! A = I_{n2}⊗Ax + Ay⊗I_{n1} with Ax = cx·G_{n1}^(α1), Ay = cy·G_{n2}^(α2).
//! In the x-fastest unknown ordering, (I⊗Ax)v applies Ax to each column of
//! the n1×n2 reshape of v and (Ay⊗I)v applies Ay to each row, so the whole
//! action costs O(N log N).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::grid::{FractionalParams, GridSpec};
use crate::grunwald::grunwald_coeffs;
use crate::mask::DomainMask;
use crate::structured::SymmetricToeplitz;

/// Default cap on n1·n2 for dense materializations.
pub const DENSE_SIZE_CAP: usize = 4096;

/// Matrix-free M = I − A + D for one (grid, dt, α, η) configuration.
#[derive(Debug, Clone)]
pub struct PenalizedOperator {
    ax: SymmetricToeplitz,
    ay: SymmetricToeplitz,
    mask: DomainMask,
}

impl PenalizedOperator {
    /// Wrap prebuilt 1-D operators; `ax` acts along x (length n1), `ay`
    /// along y (length n2).
    pub fn new(ax: SymmetricToeplitz, ay: SymmetricToeplitz, mask: DomainMask) -> Result<Self> {
        if ax.n() != mask.n1() {
            return Err(Error::DimensionMismatch {
                expected: mask.n1(),
                got: ax.n(),
            });
        }
        if ay.n() != mask.n2() {
            return Err(Error::DimensionMismatch {
                expected: mask.n2(),
                got: ay.n(),
            });
        }
        Ok(Self { ax, ay, mask })
    }

    /// Assemble Ax = cx·G_{n1} and Ay = cy·G_{n2} from the fractional
    /// parameters and wrap them with the mask.
    pub fn assemble(grid: &GridSpec, fp: &FractionalParams, mask: DomainMask) -> Result<Self> {
        let gx = grunwald_coeffs(fp.alpha1, grid.n1 + 1)?;
        let gy = grunwald_coeffs(fp.alpha2, grid.n2 + 1)?;
        let ax = SymmetricToeplitz::from_grunwald(&gx, grid.n1)?.scaled(fp.cx);
        let ay = SymmetricToeplitz::from_grunwald(&gy, grid.n2)?.scaled(fp.cy);
        Self::new(ax, ay, mask)
    }

    pub fn n1(&self) -> usize {
        self.mask.n1()
    }

    pub fn n2(&self) -> usize {
        self.mask.n2()
    }

    /// Number of unknowns n1·n2.
    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn ax(&self) -> &SymmetricToeplitz {
        &self.ax
    }

    pub fn ay(&self) -> &SymmetricToeplitz {
        &self.ay
    }

    pub fn mask(&self) -> &DomainMask {
        &self.mask
    }

    /// (I − A + D) v.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len()];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    /// (I − A + D) v written into `out`.
    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        if out.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: out.len(),
            });
        }
        let (n1, n2) = (self.n1(), self.n2());

        // Column pass: (I⊗Ax)v, on the contiguous columns of the reshape.
        let mut col_pass = v.to_vec();
        self.ax.matvec_columns(&mut col_pass, n2)?;

        // Row pass: (Ay⊗I)v, on the n1-strided rows.
        let mut row_pass = v.to_vec();
        self.ay.matvec_rows(&mut row_pass, n1)?;

        for (idx, o) in out.iter_mut().enumerate() {
            let d = if self.mask.inside()[idx] {
                0.0
            } else {
                self.mask.penalty()
            };
            *o = v[idx] - col_pass[idx] - row_pass[idx] + d * v[idx];
        }
        Ok(())
    }

    /// Dense I − A + D under the default size cap.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        self.dense_with_cap(DENSE_SIZE_CAP)
    }

    /// Dense I − A + D, refusing systems larger than `cap` unknowns.
    pub fn dense_with_cap(&self, cap: usize) -> Result<DMatrix<f64>> {
        let n = self.len();
        if n > cap {
            return Err(Error::SizeCap { requested: n, cap });
        }
        let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
            self.mask.diagonal().iter().map(|d| 1.0 + d).collect(),
        ));
        m -= self.dense_a();
        Ok(m)
    }

    /// Dense A = I⊗Ax + Ay⊗I, intended for oracles and spectral studies.
    pub fn dense_a(&self) -> DMatrix<f64> {
        let (n1, n2) = (self.n1(), self.n2());
        let ax = self.ax.dense();
        let ay = self.ay.dense();
        let mut a = DMatrix::zeros(n1 * n2, n1 * n2);
        for j in 0..n2 {
            for i in 0..n1 {
                let row = i + j * n1;
                for i2 in 0..n1 {
                    a[(row, i2 + j * n1)] += ax[(i, i2)];
                }
                for j2 in 0..n2 {
                    a[(row, i + j2 * n1)] += ay[(j, j2)];
                }
            }
        }
        a
    }
}
