//! Sine-transform preconditioners for the penalized system.
//!
//! The exact preconditioner P = I − τ₁(A) + D is dense-only (its diagonal
//! part blocks DST diagonalization) and is kept for spectral studies. The
//! practical operator handed to GMRES is
//!
//!   P̂⁻¹ = (I−Φ_d)(I − τ₁(A))⁻¹ + Φ_d((1 + dt/η)I − τ₁(A))⁻¹,
//!
//! where τ₁(A) = I⊗τ(Ax) + τ(Ay)⊗I is diagonal in the 2-D DST basis with
//! eigenvalues λ_{ij} = λx_i + λy_j, so each resolvent is a forward 2-D DST,
//! an elementwise divide, and a backward 2-D DST.

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mask::DomainMask;
use crate::operator::{PenalizedOperator, DENSE_SIZE_CAP};
use crate::structured::{dense_tau, SineTransform, SymmetricToeplitz, TauSpectrum};

/// τ spectra of both axes, the combined 2-D eigenvalues, and the mask split.
#[derive(Debug, Clone)]
pub struct TauPreconditioner {
    n1: usize,
    n2: usize,
    taux: TauSpectrum,
    tauy: TauSpectrum,
    /// λ_{ij} = λx_i + λy_j in the x-fastest ordering.
    lambda2d: Vec<f64>,
    mask: DomainMask,
    sx: SineTransform,
    sy: SineTransform,
    /// The 1-D operators the τ approximants came from; kept so the dense
    /// diagnostics can assemble τ literally as T − H.
    ax: SymmetricToeplitz,
    ay: SymmetricToeplitz,
}

impl TauPreconditioner {
    /// Build from the operator it preconditions.
    ///
    /// Fails with a singular-operator error if either resolvent shift
    /// (1 and 1 + dt/η) does not clear the τ spectrum.
    pub fn from_operator(op: &PenalizedOperator) -> Result<Self> {
        let taux = TauSpectrum::from_toeplitz(op.ax())?;
        let tauy = TauSpectrum::from_toeplitz(op.ay())?;
        let (n1, n2) = (op.n1(), op.n2());
        let mut lambda2d = Vec::with_capacity(n1 * n2);
        for ly in tauy.eigenvalues() {
            for lx in taux.eigenvalues() {
                lambda2d.push(lx + ly);
            }
        }
        let penalty = op.mask().penalty();
        for &lam in &lambda2d {
            if 1.0 - lam <= 0.0 || (1.0 + penalty) - lam <= 0.0 {
                return Err(Error::SingularOperator(format!(
                    "tau eigenvalue {lam} is not cleared by the resolvent shifts"
                )));
            }
        }
        Ok(Self {
            n1,
            n2,
            taux,
            tauy,
            lambda2d,
            mask: op.mask().clone(),
            sx: SineTransform::new(n1)?,
            sy: SineTransform::new(n2)?,
            ax: op.ax().clone(),
            ay: op.ay().clone(),
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn len(&self) -> usize {
        self.lambda2d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda2d.is_empty()
    }

    pub fn taux(&self) -> &TauSpectrum {
        &self.taux
    }

    pub fn tauy(&self) -> &TauSpectrum {
        &self.tauy
    }

    pub fn lambda2d(&self) -> &[f64] {
        &self.lambda2d
    }

    /// (S_{n2} ⊗ S_{n1}) v: DST along the contiguous columns, then along the
    /// strided rows.
    fn dst2d(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut data = v.to_vec();
        self.sx.apply_columns(&mut data, self.n2)?;
        self.sy.apply_rows(&mut data, self.n1)?;
        Ok(data)
    }

    /// Complex-packed 2-D DST carrying two real fields at once.
    fn dst2d_complex(&self, data: &mut [Complex64]) -> Result<()> {
        self.sx.apply_columns_complex(data, self.n2)?;
        self.sy.apply_rows_complex(data, self.n1)?;
        Ok(())
    }

    /// P̂⁻¹ v.
    pub fn apply_inv(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len()];
        self.apply_inv_into(v, &mut out)?;
        Ok(out)
    }

    /// P̂⁻¹ v into `out`. One shared forward transform feeds both resolvents,
    /// whose back transforms ride a single complex-packed pass.
    pub fn apply_inv_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
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
        let shift2 = 1.0 + self.mask.penalty();
        let forward = self.dst2d(v)?;
        let mut packed: Vec<Complex64> = forward
            .iter()
            .zip(&self.lambda2d)
            .map(|(&f, &lam)| Complex64::new(f / (1.0 - lam), f / (shift2 - lam)))
            .collect();
        self.dst2d_complex(&mut packed)?;
        for ((o, c), &inside) in out.iter_mut().zip(&packed).zip(self.mask.inside()) {
            *o = if inside { c.re } else { c.im };
        }
        Ok(())
    }

    /// (shift·I − τ₁(A)) v through the same DST machinery.
    pub fn apply_shifted_tau1(&self, shift: f64, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        let mut hat = self.dst2d(v)?;
        for (x, lam) in hat.iter_mut().zip(&self.lambda2d) {
            *x *= shift - lam;
        }
        self.dst2d(&hat)
    }

    /// Dense P = I − τ₁(A) + D under the default size cap.
    pub fn dense_p(&self) -> Result<DMatrix<f64>> {
        self.dense_p_with_cap(DENSE_SIZE_CAP)
    }

    /// Dense P = I − τ₁(A) + D, for spectral studies only.
    pub fn dense_p_with_cap(&self, cap: usize) -> Result<DMatrix<f64>> {
        let n = self.len();
        if n > cap {
            return Err(Error::SizeCap { requested: n, cap });
        }
        let mut p = DMatrix::identity(n, n) - self.dense_tau1_uncapped();
        for (idx, d) in self.mask.diagonal().iter().enumerate() {
            p[(idx, idx)] += d;
        }
        Ok(p)
    }

    /// Dense τ₁(A) = I⊗τ(Ax) + τ(Ay)⊗I.
    pub fn dense_tau1(&self, cap: usize) -> Result<DMatrix<f64>> {
        let n = self.len();
        if n > cap {
            return Err(Error::SizeCap { requested: n, cap });
        }
        Ok(self.dense_tau1_uncapped())
    }

    fn dense_tau1_uncapped(&self) -> DMatrix<f64> {
        let (n1, n2) = (self.n1, self.n2);
        // Literal T − H blocks; independent of the quotient eigenvalues.
        let tx = dense_tau(&self.ax);
        let ty = dense_tau(&self.ay);
        let mut t = DMatrix::zeros(n1 * n2, n1 * n2);
        for j in 0..n2 {
            for i in 0..n1 {
                let row = i + j * n1;
                for i2 in 0..n1 {
                    t[(row, i2 + j * n1)] += tx[(i, i2)];
                }
                for j2 in 0..n2 {
                    t[(row, i + j2 * n1)] += ty[(j, j2)];
                }
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FractionalParams, GridSpec};
    use crate::spectral;
    use crate::structured::SymmetricToeplitz;
    use nalgebra::DVector;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ellipse(x: f64, y: f64) -> bool {
        (x - 2.0) * (x - 2.0) / 4.0 + (y - 1.0) * (y - 1.0) <= 1.0
    }

    fn build(n: usize, a1: f64, a2: f64, region: impl Fn(f64, f64) -> bool) -> PenalizedOperator {
        let grid = GridSpec::new(0.0, 4.0, 0.0, 2.0, n, n, n, 1.0).unwrap();
        let fp = FractionalParams::new(a1, a2, 1.0, 1.0, &grid).unwrap();
        let mask = DomainMask::build(&grid, region, 1e-5).unwrap();
        PenalizedOperator::assemble(&grid, &fp, mask).unwrap()
    }

    #[test]
    fn lambda2d_is_strictly_negative_for_fractional_operators() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        assert!(p.lambda2d().iter().all(|&l| l < 0.0));
    }

    #[test]
    fn all_inside_collapses_to_single_resolvent() {
        let op = build(8, 1.4, 1.7, |_, _| true);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let v: Vec<f64> = (0..64).map(|i| (i as f64 * 0.37).sin()).collect();
        let w = p.apply_inv(&v).unwrap();
        let back = p.apply_shifted_tau1(1.0, &w).unwrap();
        for (b, x) in back.iter().zip(&v) {
            assert!((b - x).abs() < 1e-11);
        }
    }

    #[test]
    fn all_outside_collapses_to_shifted_resolvent() {
        let op = build(8, 1.4, 1.7, |_, _| false);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let shift = 1.0 + op.mask().penalty();
        let v: Vec<f64> = (0..64).map(|i| (i as f64 * 0.61).cos()).collect();
        let w = p.apply_inv(&v).unwrap();
        let back = p.apply_shifted_tau1(shift, &w).unwrap();
        for (b, x) in back.iter().zip(&v) {
            assert!((b - x).abs() < 1e-9 * shift);
        }
    }

    #[test]
    fn matches_dense_resolvent_assembly_8x8() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let n = 64;
        let tau1 = p.dense_tau1(4096).unwrap();
        let eye = DMatrix::<f64>::identity(n, n);
        let shift2 = 1.0 + op.mask().penalty();
        let r1 = (&eye - &tau1).try_inverse().unwrap();
        let r2 = (&eye * shift2 - &tau1).try_inverse().unwrap();
        let phi = DMatrix::from_diagonal(&DVector::from_iterator(
            n,
            op.mask()
                .inside()
                .iter()
                .map(|&b| if b { 0.0 } else { 1.0 }),
        ));
        let dense_pinv = (&eye - &phi) * r1 + &phi * r2;

        let mut rng = StdRng::seed_from_u64(42);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = p.apply_inv(&v).unwrap();
        let want = &dense_pinv * DVector::from_row_slice(&v);
        let scale = want.abs().max();
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).abs() / scale < 1e-10);
        }
    }

    #[test]
    fn dense_p_without_penalty_diagonalizes() {
        let op = build(6, 1.5, 1.5, |_, _| true);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let dense = p.dense_p().unwrap();
        let mut got = spectral::symmetric_eigenvalues(&dense);
        let mut want: Vec<f64> = p.lambda2d().iter().map(|l| 1.0 - l).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10);
        }
    }

    #[test]
    fn dense_p_is_symmetric() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let dense = p.dense_p().unwrap();
        assert!((&dense - dense.transpose()).abs().max() < 1e-14);
    }

    #[test]
    fn preconditioned_spectrum_in_half_to_three_halves() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let m = op.dense().unwrap();
        let pd = p.dense_p().unwrap();
        let eigs = spectral::spd_pencil_eigenvalues(&m, &pd).unwrap();
        for e in eigs {
            assert!(e > 0.5 && e < 1.5, "eig(P^-1 M) = {e}");
        }
    }

    #[test]
    fn tau1_approximates_a_within_spectral_bounds() {
        for n in [4, 8] {
            let op = build(n, 1.4, 1.7, ellipse);
            let p = TauPreconditioner::from_operator(&op).unwrap();
            let a = -op.dense_a();
            let t = -p.dense_tau1(4096).unwrap();
            let eigs = spectral::spd_pencil_eigenvalues(&a, &t).unwrap();
            for e in eigs {
                assert!(e > 0.5 && e < 1.5, "n={n}: eig(tau1^-1 A) = {e}");
            }
        }
    }

    #[test]
    fn apply_inv_is_linear() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let u: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (a, b) = (0.7, -2.3);
        let combo: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let lhs = p.apply_inv(&combo).unwrap();
        let pu = p.apply_inv(&u).unwrap();
        let pv = p.apply_inv(&v).unwrap();
        for (l, (x, y)) in lhs.iter().zip(pu.iter().zip(&pv)) {
            assert!((l - (a * x + b * y)).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_phat_inv_has_no_zero_singular_value() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        let n = 64;
        // Probe P̂⁻¹ columnwise to materialize it.
        let mut dense = DMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = p.apply_inv(&e).unwrap();
            for i in 0..n {
                dense[(i, j)] = col[i];
            }
        }
        let sv = dense.svd(false, false).singular_values;
        let max = sv.iter().fold(0.0f64, |m, x| m.max(*x));
        let min = sv.iter().fold(f64::MAX, |m, x| m.min(*x));
        assert!(min > 1e-12 * max, "singular values span [{min}, {max}]");
    }

    #[test]
    fn rejects_uncleared_spectrum() {
        // t0 = 2 gives tau = 2I, so the shift 1 lands exactly on 1 − 2 < 0.
        let grid = GridSpec::new(0.0, 1.0, 0.0, 1.0, 3, 3, 3, 1.0).unwrap();
        let mask = DomainMask::build(&grid, |_, _| true, 1e-5).unwrap();
        let ax = SymmetricToeplitz::new(vec![2.0, 0.0, 0.0]).unwrap();
        let ay = SymmetricToeplitz::new(vec![0.0, 0.0, 0.0]).unwrap();
        let op = PenalizedOperator::new(ax, ay, mask).unwrap();
        assert!(matches!(
            TauPreconditioner::from_operator(&op),
            Err(Error::SingularOperator(_))
        ));
    }

    #[test]
    fn dense_p_respects_cap() {
        let op = build(8, 1.4, 1.7, ellipse);
        let p = TauPreconditioner::from_operator(&op).unwrap();
        assert!(matches!(
            p.dense_p_with_cap(10),
            Err(Error::SizeCap { .. })
        ));
    }
}
