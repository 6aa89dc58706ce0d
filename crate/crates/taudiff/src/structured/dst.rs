//! Discrete sine transform of type I.
//!
//! S_n has entries sqrt(2/(n+1))·sin(πij/(n+1)); it is symmetric and
//! orthogonal, so it is its own inverse. The transform is evaluated through
//! a complex FFT of length 2(n+1) on the odd extension of the input, which
//! keeps the O(n log n) cost bound. The odd extension makes the spectrum of
//! a real input purely imaginary, so two real inputs (or one complex one)
//! ride in a single FFT: for c = a + ib, Σ c_j sin(πjk/(n+1)) recovers as
//! (i/2)·FFT(odd_ext(c))[k].

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// DST-I operator of a fixed length with a cached FFT plan.
///
/// Applications allocate only call-local buffers, so concurrent calls from
/// multiple threads are independent and correct.
#[derive(Clone)]
pub struct SineTransform {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
    /// sqrt(2/(n+1))/2, the prefactor of the spectrum extraction.
    half_scale: f64,
}

impl std::fmt::Debug for SineTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SineTransform").field("n", &self.n).finish()
    }
}

impl SineTransform {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterDomain(
                "transform length must be positive".into(),
            ));
        }
        let m = 2 * (n + 1);
        let fft = FftPlanner::new().plan_fft_forward(m);
        Ok(Self {
            n,
            fft,
            half_scale: 0.5 * (2.0 / (n + 1) as f64).sqrt(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// S_n v.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n];
        let mut work = self.workspace();
        self.apply_into(v, &mut out, &mut work)?;
        Ok(out)
    }

    /// S_n v into `out`, reusing scratch buffers.
    pub fn apply_into(&self, v: &[f64], out: &mut [f64], work: &mut DstWorkspace) -> Result<()> {
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
        // Odd extension: [0, v_1..v_n, 0, -v_n..-v_1].
        let m = 2 * (self.n + 1);
        work.buf[0] = Complex64::new(0.0, 0.0);
        work.buf[self.n + 1] = Complex64::new(0.0, 0.0);
        for (i, &x) in v.iter().enumerate() {
            work.buf[i + 1] = Complex64::new(x, 0.0);
            work.buf[m - 1 - i] = Complex64::new(-x, 0.0);
        }
        self.fft
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        for (k, o) in out.iter_mut().enumerate() {
            *o = -self.half_scale * work.buf[k + 1].im;
        }
        Ok(())
    }

    /// Transform a pair of real vectors through one FFT:
    /// (S a, S b) from the packed input a + ib.
    fn apply_pair(&self, a: &mut [f64], b: &mut [f64], work: &mut DstWorkspace) {
        let n = self.n;
        let m = 2 * (n + 1);
        work.buf[0] = Complex64::new(0.0, 0.0);
        work.buf[n + 1] = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let c = Complex64::new(a[i], b[i]);
            work.buf[i + 1] = c;
            work.buf[m - 1 - i] = -c;
        }
        self.fft
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        // Purely-imaginary spectra of the two odd extensions split as
        // S a = -Im/2, S b = Re/2 (times the DST normalization).
        for k in 0..n {
            let f = work.buf[k + 1];
            a[k] = -self.half_scale * f.im;
            b[k] = self.half_scale * f.re;
        }
    }

    /// Transform one complex vector in place: S c = (i/2)·FFT(odd_ext(c))
    /// times the DST normalization; used to push two packed real fields
    /// through a 2-D pass at once.
    pub(crate) fn apply_complex(&self, col: &mut [Complex64], work: &mut DstWorkspace) {
        let n = self.n;
        debug_assert_eq!(col.len(), n);
        let m = 2 * (n + 1);
        work.buf[0] = Complex64::new(0.0, 0.0);
        work.buf[n + 1] = Complex64::new(0.0, 0.0);
        for (i, &c) in col.iter().enumerate() {
            work.buf[i + 1] = c;
            work.buf[m - 1 - i] = -c;
        }
        self.fft
            .process_with_scratch(&mut work.buf, &mut work.scratch);
        for (k, o) in col.iter_mut().enumerate() {
            let f = work.buf[k + 1];
            *o = Complex64::new(-self.half_scale * f.im, self.half_scale * f.re);
        }
    }

    /// Transform each of `ncols` contiguous length-n columns of `data` in
    /// place; columns are processed two per FFT.
    pub fn apply_columns(&self, data: &mut [f64], ncols: usize) -> Result<()> {
        if data.len() != self.n * ncols {
            return Err(Error::DimensionMismatch {
                expected: self.n * ncols,
                got: data.len(),
            });
        }
        let mut work = self.workspace();
        let mut chunks = data.chunks_exact_mut(2 * self.n);
        for pair in chunks.by_ref() {
            let (a, b) = pair.split_at_mut(self.n);
            self.apply_pair(a, b, &mut work);
        }
        let tail = chunks.into_remainder();
        if !tail.is_empty() {
            let mut out = vec![0.0; self.n];
            self.apply_into(tail, &mut out, &mut work)?;
            tail.copy_from_slice(&out);
        }
        Ok(())
    }

    /// Complex analogue of [`Self::apply_columns`].
    pub(crate) fn apply_columns_complex(
        &self,
        data: &mut [Complex64],
        ncols: usize,
    ) -> Result<()> {
        if data.len() != self.n * ncols {
            return Err(Error::DimensionMismatch {
                expected: self.n * ncols,
                got: data.len(),
            });
        }
        let mut work = self.workspace();
        for col in data.chunks_exact_mut(self.n) {
            self.apply_complex(col, &mut work);
        }
        Ok(())
    }

    /// Transform along the rows of an `nrows` × n matrix stored row-fastest
    /// (element (r, k) at `data[r + k·nrows]`), two rows per FFT; avoids
    /// materializing a transpose.
    pub fn apply_rows(&self, data: &mut [f64], nrows: usize) -> Result<()> {
        if data.len() != self.n * nrows {
            return Err(Error::DimensionMismatch {
                expected: self.n * nrows,
                got: data.len(),
            });
        }
        let n = self.n;
        let m = 2 * (n + 1);
        let mut work = self.workspace();
        let mut r = 0;
        while r + 1 < nrows {
            work.buf[0] = Complex64::new(0.0, 0.0);
            work.buf[n + 1] = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let base = r + k * nrows;
                let c = Complex64::new(data[base], data[base + 1]);
                work.buf[k + 1] = c;
                work.buf[m - 1 - k] = -c;
            }
            self.fft
                .process_with_scratch(&mut work.buf, &mut work.scratch);
            for k in 0..n {
                let f = work.buf[k + 1];
                let base = r + k * nrows;
                data[base] = -self.half_scale * f.im;
                data[base + 1] = self.half_scale * f.re;
            }
            r += 2;
        }
        if r < nrows {
            let col: Vec<f64> = (0..n).map(|k| data[r + k * nrows]).collect();
            let mut out = vec![0.0; n];
            self.apply_into(&col, &mut out, &mut work)?;
            for (k, val) in out.into_iter().enumerate() {
                data[r + k * nrows] = val;
            }
        }
        Ok(())
    }

    /// Complex analogue of [`Self::apply_rows`], one row per FFT.
    pub(crate) fn apply_rows_complex(&self, data: &mut [Complex64], nrows: usize) -> Result<()> {
        if data.len() != self.n * nrows {
            return Err(Error::DimensionMismatch {
                expected: self.n * nrows,
                got: data.len(),
            });
        }
        let n = self.n;
        let m = 2 * (n + 1);
        let mut work = self.workspace();
        for r in 0..nrows {
            work.buf[0] = Complex64::new(0.0, 0.0);
            work.buf[n + 1] = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let c = data[r + k * nrows];
                work.buf[k + 1] = c;
                work.buf[m - 1 - k] = -c;
            }
            self.fft
                .process_with_scratch(&mut work.buf, &mut work.scratch);
            for k in 0..n {
                let f = work.buf[k + 1];
                data[r + k * nrows] = Complex64::new(-self.half_scale * f.im, self.half_scale * f.re);
            }
        }
        Ok(())
    }

    pub fn workspace(&self) -> DstWorkspace {
        let m = 2 * (self.n + 1);
        DstWorkspace {
            buf: vec![Complex64::new(0.0, 0.0); m],
            scratch: vec![Complex64::new(0.0, 0.0); self.fft.get_inplace_scratch_len()],
        }
    }
}

/// Reusable scratch for the transform routines.
pub struct DstWorkspace {
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}
