//! Dense complex matrix kernel for the quantum layers of the workbench.
//!
//! Everything upstream (transduction, codebooks, discrimination, circuits)
//! works on [`ComplexMatrix`] and [`DensityMatrix`] values. The kernel is
//! deliberately dense and small-dimension oriented: operators here top out
//! around a hundred rows, so simple O(n³) algorithms win on clarity and
//! determinism.

mod density;
mod eig;
mod matrix;

pub use density::{partial_trace, partial_trace_matrix, DensityMatrix};
pub use eig::{expm_unitary, herm_eig, trace_norm, HermEig};
pub use matrix::ComplexMatrix;

use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Absolute entry-wise tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-9;

/// Eigenvalues above `-PSD_TOL` count as non-negative.
pub const PSD_TOL: f64 = 1e-9;

/// Allowed deviation of a density-matrix trace from one, absent truncation.
pub const UNIT_TRACE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum QmathError {
    /// A matrix entry was NaN or infinite.
    #[error("matrix contains a non-finite entry")]
    NonFinite,

    /// Entry buffer length disagrees with the declared shape.
    #[error("expected {expected} entries for the declared shape, got {got}")]
    EntryCount { expected: usize, got: usize },

    /// Operation requires a square matrix.
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Matrix deviates from its adjoint beyond [`HERMITICITY_TOL`].
    #[error("matrix is not Hermitian: max |A - A^H| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// The eigenvalue iteration failed to converge.
    #[error("eigendecomposition did not converge")]
    NoConvergence,

    /// Shape or subsystem bookkeeping error.
    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    /// Minimum eigenvalue fell below `-PSD_TOL`.
    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// Trace strayed further from one than the declared allowance.
    #[error("trace {trace:.12} deviates from 1 beyond tolerance {tolerance:.3e}")]
    TraceDeviation { trace: f64, tolerance: f64 },
}
