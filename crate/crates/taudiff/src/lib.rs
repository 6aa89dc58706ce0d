//! Matrix-free solver for 2-D Riesz space-fractional diffusion equations on
//! convex domains.
//!
//! The irregular domain is embedded in a rectangle by volume penalization,
//! the Riesz derivatives are discretized with shifted Grünwald-Letnikov
//! stencils, and the resulting system (I − A + D)u^k = b^k is solved each
//! implicit time step by restarted GMRES. The preconditioner replaces the
//! Toeplitz blocks of A with their τ approximants, which the discrete sine
//! transform diagonalizes, so both the operator and the preconditioner apply
//! in O(N log N).
//!
//! Start from [`elliptical_problem`] and [`stepper::run`] for a full solve, or
//! look at the `examples/` directory: each benchmark capability (convergence
//! sweep, penalty scan, spectral check, raw kernels) has a runnable example.

// Validation guards are written as negations (`!(x > 0.0)`) so NaN inputs
// fail them; the "cleaner" comparison would silently accept NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod gmres;
pub mod grid;
pub mod grunwald;
pub mod mask;
pub mod operator;
pub mod precond;
pub mod problem;
pub mod special;
pub mod spectral;
pub mod stepper;
pub mod structured;

pub use error::{Error, Result};
pub use experiment::{run_experiment, ExperimentConfig, MRule, Mode, OutputFormat};
pub use gmres::{gmres_solve, IterationReport, LinearOperator, SolverConfig};
pub use grid::{riesz_constant, FractionalParams, GridSpec};
pub use grunwald::{grunwald_coeffs, GrunwaldSequence};
pub use mask::DomainMask;
pub use operator::{PenalizedOperator, DENSE_SIZE_CAP};
pub use precond::TauPreconditioner;
pub use problem::{elliptical_problem, ProblemDef};
pub use stepper::{initial_state, step, SolveReport, TimeStepState};
pub use structured::{dense_tau, SineTransform, SymmetricToeplitz, TauSpectrum};
