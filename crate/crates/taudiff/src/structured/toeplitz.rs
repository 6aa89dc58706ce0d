//! Symmetric Toeplitz operator with O(n log n) matvec via circulant embedding.

use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grunwald::GrunwaldSequence;

/// Symmetric Toeplitz matrix stored by its first column.
///
/// The dense matrix it represents has entry (i, j) = t_{|i−j|}. The first
/// column is embedded in a circulant of size 2n whose spectrum is cached at
/// construction, so each matvec costs two FFTs of length 2n; the embedding
/// is an even sequence, so its spectrum is exactly real and two real
/// vectors can share one complex FFT.
#[derive(Clone)]
pub struct SymmetricToeplitz {
    n: usize,
    first_col: Vec<f64>,
    /// FFT of the circulant embedding [t_0..t_{n−1}, 0, t_{n−1}..t_1].
    embedded_spectrum: Vec<Complex64>,
    /// Real part of the embedding spectrum (the exact spectrum), used for
    /// the elementwise multiply.
    spectrum_re: Vec<f64>,
    fft_fwd: Arc<dyn Fft<f64>>,
    fft_inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SymmetricToeplitz {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymmetricToeplitz")
            .field("n", &self.n)
            .field("first_col", &self.first_col)
            .finish()
    }
}

impl SymmetricToeplitz {
    /// Build the operator from its first column `[t_0, .., t_{n-1}]`.
    pub fn new(first_col: Vec<f64>) -> Result<Self> {
        let n = first_col.len();
        if n == 0 {
            return Err(Error::ParameterDomain(
                "Toeplitz first column must be nonempty".into(),
            ));
        }
        let m = 2 * n;
        let mut planner = FftPlanner::new();
        let fft_fwd = planner.plan_fft_forward(m);
        let fft_inv = planner.plan_fft_inverse(m);

        let mut embed = vec![Complex64::new(0.0, 0.0); m];
        for (k, &t) in first_col.iter().enumerate() {
            embed[k].re = t;
        }
        for k in 1..n {
            embed[m - k].re = first_col[k];
        }
        fft_fwd.process(&mut embed);
        let spectrum_re = embed.iter().map(|c| c.re).collect();

        Ok(Self {
            n,
            first_col,
            embedded_spectrum: embed,
            spectrum_re,
            fft_fwd,
            fft_inv,
        })
    }

    /// Build the fractional-stencil matrix G_n from a coefficient sequence:
    /// t_0 = 2 g_1, t_1 = g_0 + g_2, t_k = g_{k+1} for k ≥ 2.
    ///
    /// Needs at least n+1 coefficients.
    pub fn from_grunwald(g: &GrunwaldSequence, n: usize) -> Result<Self> {
        if g.len() < n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: g.len(),
            });
        }
        let c = g.coeffs();
        let mut first_col = Vec::with_capacity(n);
        first_col.push(2.0 * c[1]);
        if n > 1 {
            first_col.push(c[0] + c[2]);
        }
        for k in 2..n {
            first_col.push(c[k + 1]);
        }
        Self::new(first_col)
    }

    /// A copy scaled by a constant factor.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.first_col {
            *t *= factor;
        }
        for s in &mut out.embedded_spectrum {
            *s *= factor;
        }
        for s in &mut out.spectrum_re {
            *s *= factor;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_col(&self) -> &[f64] {
        &self.first_col
    }

    pub fn embedded_spectrum(&self) -> &[Complex64] {
        &self.embedded_spectrum
    }

    /// Dense materialization, entry (i, j) = t_{|i−j|}.
    pub fn dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.first_col[i.abs_diff(j)])
    }

    /// Matrix-vector product via the cached circulant spectrum.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n];
        let mut work = Workspace::for_operator(self);
        self.matvec_into(v, &mut out, &mut work)?;
        Ok(out)
    }

    /// Matvec writing into `out`, reusing caller-provided scratch.
    pub fn matvec_into(&self, v: &[f64], out: &mut [f64], work: &mut Workspace) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        if out.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: out.len(),
            });
        }
        let m = 2 * self.n;
        debug_assert_eq!(work.buf.len(), m);
        for (slot, &x) in work.buf.iter_mut().zip(v) {
            *slot = Complex64::new(x, 0.0);
        }
        for slot in work.buf[self.n..].iter_mut() {
            *slot = Complex64::new(0.0, 0.0);
        }
        self.fft_fwd
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        for (slot, spec) in work.buf.iter_mut().zip(&self.spectrum_re) {
            *slot *= *spec;
        }
        self.fft_inv
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        let norm = 1.0 / m as f64;
        for (o, b) in out.iter_mut().zip(&work.buf) {
            *o = b.re * norm;
        }
        Ok(())
    }

    /// Two matvecs through one FFT, inputs overwritten with the products.
    fn matvec_pair(&self, a: &mut [f64], b: &mut [f64], work: &mut Workspace) {
        let m = 2 * self.n;
        for i in 0..self.n {
            work.buf[i] = Complex64::new(a[i], b[i]);
        }
        for slot in work.buf[self.n..].iter_mut() {
            *slot = Complex64::new(0.0, 0.0);
        }
        self.fft_fwd
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        for (slot, spec) in work.buf.iter_mut().zip(&self.spectrum_re) {
            *slot *= *spec;
        }
        self.fft_inv
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        let norm = 1.0 / m as f64;
        for i in 0..self.n {
            a[i] = work.buf[i].re * norm;
            b[i] = work.buf[i].im * norm;
        }
    }

    /// Apply the operator along the rows of an `nrows` × n matrix stored
    /// row-fastest (element (r, k) at `data[r + k·nrows]`), two rows per
    /// FFT; avoids materializing a transpose.
    pub fn matvec_rows(&self, data: &mut [f64], nrows: usize) -> Result<()> {
        if data.len() != self.n * nrows {
            return Err(Error::DimensionMismatch {
                expected: self.n * nrows,
                got: data.len(),
            });
        }
        let n = self.n;
        let m = 2 * n;
        let norm = 1.0 / m as f64;
        let mut work = Workspace::for_operator(self);
        let mut r = 0;
        while r + 1 < nrows {
            for k in 0..n {
                let base = r + k * nrows;
                work.buf[k] = Complex64::new(data[base], data[base + 1]);
            }
            for slot in work.buf[n..].iter_mut() {
                *slot = Complex64::new(0.0, 0.0);
            }
            self.fft_fwd
                .process_with_scratch(&mut work.buf, &mut work.scratch);
            for (slot, spec) in work.buf.iter_mut().zip(&self.spectrum_re) {
                *slot *= *spec;
            }
            self.fft_inv
                .process_with_scratch(&mut work.buf, &mut work.scratch);
            for k in 0..n {
                let base = r + k * nrows;
                data[base] = work.buf[k].re * norm;
                data[base + 1] = work.buf[k].im * norm;
            }
            r += 2;
        }
        if r < nrows {
            let row: Vec<f64> = (0..n).map(|k| data[r + k * nrows]).collect();
            let mut out = vec![0.0; n];
            self.matvec_into(&row, &mut out, &mut work)?;
            for (k, val) in out.into_iter().enumerate() {
                data[r + k * nrows] = val;
            }
        }
        Ok(())
    }

    /// Apply the operator to each of `ncols` contiguous columns of length n
    /// stored back-to-back in `data`, in place; columns ride the FFT in
    /// pairs. One scratch allocation per call.
    pub fn matvec_columns(&self, data: &mut [f64], ncols: usize) -> Result<()> {
        if data.len() != self.n * ncols {
            return Err(Error::DimensionMismatch {
                expected: self.n * ncols,
                got: data.len(),
            });
        }
        let mut work = Workspace::for_operator(self);
        let mut chunks = data.chunks_exact_mut(2 * self.n);
        for pair in chunks.by_ref() {
            let (a, b) = pair.split_at_mut(self.n);
            self.matvec_pair(a, b, &mut work);
        }
        let tail = chunks.into_remainder();
        if !tail.is_empty() {
            let mut out = vec![0.0; self.n];
            self.matvec_into(tail, &mut out, &mut work)?;
            tail.copy_from_slice(&out);
        }
        Ok(())
    }
}

/// Reusable scratch for [`SymmetricToeplitz::matvec_into`].
pub struct Workspace {
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Workspace {
    pub fn for_operator(op: &SymmetricToeplitz) -> Self {
        let m = 2 * op.n;
        let scratch_len = op
            .fft_fwd
            .get_inplace_scratch_len()
            .max(op.fft_inv.get_inplace_scratch_len());
        Self {
            buf: vec![Complex64::new(0.0, 0.0); m],
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grunwald::grunwald_coeffs;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dense_matvec(first_col: &[f64], v: &[f64]) -> Vec<f64> {
        let n = first_col.len();
        (0..n)
            .map(|i| (0..n).map(|j| first_col[i.abs_diff(j)] * v[j]).sum())
            .collect()
    }

    fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
        let scale = b.iter().fold(1e-300f64, |m, x| m.max(x.abs()));
        a.iter()
            .zip(b)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs() / scale))
    }

    #[test]
    fn identity_column_passes_through() {
        let mut col = vec![0.0; 7];
        col[0] = 1.0;
        let t = SymmetricToeplitz::new(col).unwrap();
        let v: Vec<f64> = (0..7).map(|i| i as f64 - 2.5).collect();
        let got = t.matvec(&v).unwrap();
        assert!(max_rel_diff(&got, &v) < 1e-14);
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let t = SymmetricToeplitz::new(vec![3.0, -1.0, 0.5]).unwrap();
        let got = t.matvec(&[0.0, 0.0, 0.0]).unwrap();
        assert!(got.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn random_matvec_matches_dense_n5() {
        let mut rng = StdRng::seed_from_u64(5);
        let col: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let t = SymmetricToeplitz::new(col.clone()).unwrap();
        let got = t.matvec(&v).unwrap();
        let want = dense_matvec(&col, &v);
        assert!(max_rel_diff(&got, &want) < 1e-12);
    }

    #[test]
    fn matvec_matches_dense_up_to_n64() {
        let mut rng = StdRng::seed_from_u64(64);
        for n in 1..=64 {
            let col: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let t = SymmetricToeplitz::new(col.clone()).unwrap();
            let got = t.matvec(&v).unwrap();
            let want = dense_matvec(&col, &v);
            assert!(max_rel_diff(&got, &want) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn from_grunwald_frozen_alpha_15() {
        // From g = [1, -1.5, 0.375, 0.0625]: t = [2 g1, g0+g2, g3].
        let g = grunwald_coeffs(1.5, 5).unwrap();
        let t = SymmetricToeplitz::from_grunwald(&g, 3).unwrap();
        let want = [-3.0, 1.375, 0.0625];
        for (got, want) in t.first_col().iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn from_grunwald_one_by_one() {
        for alpha in [1.2, 1.5, 1.8] {
            let g = grunwald_coeffs(alpha, 3).unwrap();
            let t = SymmetricToeplitz::from_grunwald(&g, 1).unwrap();
            assert!((t.first_col()[0] + 2.0 * alpha).abs() < 1e-14);
        }
    }

    #[test]
    fn from_grunwald_dense_matches_display_n4() {
        // Assemble the 4x4 matrix literally: diagonal 2g1, first off-diagonal
        // g0+g2, then g3, g4.
        let g = grunwald_coeffs(1.5, 8).unwrap();
        let c = g.coeffs();
        let t = SymmetricToeplitz::from_grunwald(&g, 4).unwrap();
        let dense = t.dense();
        let band = [2.0 * c[1], c[0] + c[2], c[3], c[4]];
        for i in 0..4 {
            for j in 0..4 {
                assert!((dense[(i, j)] - band[i.abs_diff(j)]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn from_grunwald_requires_enough_coefficients() {
        let g = grunwald_coeffs(1.5, 4).unwrap();
        assert!(SymmetricToeplitz::from_grunwald(&g, 4).is_err());
    }

    #[test]
    fn matvec_rejects_wrong_length() {
        let t = SymmetricToeplitz::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            t.matvec(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scaled_matches_scaled_dense() {
        let t = SymmetricToeplitz::new(vec![2.0, -1.0, 0.25, 0.1]).unwrap();
        let s = t.scaled(-0.3);
        let v = [1.0, -2.0, 0.5, 3.0];
        let got = s.matvec(&v).unwrap();
        let want: Vec<f64> = t.matvec(&v).unwrap().iter().map(|x| -0.3 * x).collect();
        assert!(max_rel_diff(&got, &want) < 1e-13);
    }

    #[test]
    fn matvec_columns_matches_per_column() {
        // Odd column counts exercise the unpaired tail.
        let mut rng = StdRng::seed_from_u64(9);
        let t = SymmetricToeplitz::new((0..6).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        for ncols in [1usize, 2, 3, 4, 5] {
            let mut data: Vec<f64> = (0..6 * ncols).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let cols: Vec<Vec<f64>> = data.chunks(6).map(|c| t.matvec(c).unwrap()).collect();
            t.matvec_columns(&mut data, ncols).unwrap();
            for (chunk, want) in data.chunks(6).zip(cols) {
                assert!(max_rel_diff(chunk, &want) < 1e-13, "ncols = {ncols}");
            }
        }
    }

    #[test]
    fn strided_rows_match_per_row_matvecs() {
        let mut rng = StdRng::seed_from_u64(15);
        for n in [1usize, 2, 6, 11] {
            for nrows in [1usize, 2, 3, 4, 7] {
                let col: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let t = SymmetricToeplitz::new(col).unwrap();
                let mut data: Vec<f64> =
                    (0..n * nrows).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let want: Vec<Vec<f64>> = (0..nrows)
                    .map(|r| {
                        let row: Vec<f64> = (0..n).map(|k| data[r + k * nrows]).collect();
                        t.matvec(&row).unwrap()
                    })
                    .collect();
                t.matvec_rows(&mut data, nrows).unwrap();
                for (r, want) in want.iter().enumerate() {
                    for k in 0..n {
                        assert!(
                            (data[r + k * nrows] - want[k]).abs() < 1e-12,
                            "n = {n}, nrows = {nrows}, row {r}"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn embedding_agrees_with_dense(n in 1usize..40, seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let col: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let t = SymmetricToeplitz::new(col.clone()).unwrap();
            let got = t.matvec(&v).unwrap();
            let want = dense_matvec(&col, &v);
            prop_assert!(max_rel_diff(&got, &want) < 1e-12);
        }
    }
}
