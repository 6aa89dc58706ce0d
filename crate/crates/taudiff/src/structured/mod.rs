//! Structured-matrix kernels: symmetric Toeplitz operators with FFT matvec,
//! the DST-I transform, and τ approximants diagonalized by DST-I.

mod dst;
mod tau;
mod toeplitz;

pub use dst::SineTransform;
pub use tau::{dense_tau, TauSpectrum};
pub use toeplitz::SymmetricToeplitz;
