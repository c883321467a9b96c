use super::{C64, ComplexMatrix, QmathError, herm_eig};
use super::{HERMITICITY_TOL, PSD_TOL, UNIT_TRACE_TOL};

/// A validated quantum state: Hermitian, positive semidefinite, unit trace.
///
/// States produced by truncated-Fock pipelines can carry a small, known trace
/// deficit; such states are built with [`DensityMatrix::with_trace_tolerance`]
/// and remember the widened tolerance so downstream checks (tensor products,
/// partial traces, measurement normalization) can account for it.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    trace_tol: f64,
}

impl DensityMatrix {
    /// Validates and wraps `mat` as a state with the standard unit-trace
    /// tolerance of `1e-9`.
    pub fn new(mat: ComplexMatrix) -> Result<Self, QmathError> {
        Self::with_trace_tolerance(mat, UNIT_TRACE_TOL)
    }

    /// Validates and wraps `mat`, allowing `|Tr − 1| ≤ trace_tol`.
    ///
    /// Hermiticity and positivity are still enforced at the standard
    /// tolerances; the stored matrix is symmetrized to scrub sub-tolerance
    /// round-off.
    pub fn with_trace_tolerance(mat: ComplexMatrix, trace_tol: f64) -> Result<Self, QmathError> {
        let trace_tol = trace_tol.max(UNIT_TRACE_TOL);
        let dev = {
            if mat.rows() != mat.cols() {
                return Err(QmathError::NotSquare {
                    rows: mat.rows(),
                    cols: mat.cols(),
                });
            }
            mat.hermiticity_deviation()
        };
        if dev > HERMITICITY_TOL {
            return Err(QmathError::NotHermitian { deviation: dev });
        }
        let sym = mat.symmetrized();
        let trace = sym.trace().re;
        if (trace - 1.0).abs() > trace_tol {
            return Err(QmathError::TraceDeviation {
                trace,
                tolerance: trace_tol,
            });
        }
        let min_eig = herm_eig(&sym)?
            .eigenvalues
            .last()
            .copied()
            .expect("dimension is positive");
        if min_eig < -PSD_TOL {
            return Err(QmathError::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self {
            mat: sym,
            trace_tol,
        })
    }

    /// Pure state |ψ⟩⟨ψ| from a normalized amplitude vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self, QmathError> {
        Self::new(ComplexMatrix::outer(amplitudes, amplitudes))
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// The unit-trace tolerance this state was validated against.
    pub fn trace_tol(&self) -> f64 {
        self.trace_tol
    }

    /// Purity `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Tensor product; the trace tolerances combine multiplicatively.
    pub fn tensor(&self, other: &Self) -> Self {
        let tol =
            self.trace_tol + other.trace_tol + self.trace_tol * other.trace_tol;
        Self {
            mat: self.mat.kron(&other.mat),
            trace_tol: tol.max(UNIT_TRACE_TOL),
        }
    }
}

/// Partial trace of `rho` over the subsystems *not* listed in `keep`.
///
/// `dims` gives the per-subsystem dimensions in tensor order (first factor
/// most significant); `keep` lists the subsystem indices to retain, in
/// ascending order. The result lives on the kept factors in their original
/// order and inherits `rho`'s trace tolerance.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<DensityMatrix, QmathError> {
    let mat = partial_trace_matrix(rho.matrix(), dims, keep)?;
    DensityMatrix::with_trace_tolerance(mat, rho.trace_tol())
}

/// Matrix-level partial trace kernel (no state validation).
///
/// Same index conventions as [`partial_trace`]; works on any square matrix,
/// so `kron(a, b)` traced over the second factor returns `a · Tr(b)`.
pub fn partial_trace_matrix(
    mat: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix, QmathError> {
    if mat.rows() != mat.cols() {
        return Err(QmathError::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.iter().any(|&d| d == 0) || total != mat.rows() {
        return Err(QmathError::DimensionMismatch {
            detail: format!(
                "subsystem dims {dims:?} do not factor a {}-dimensional space",
                mat.rows()
            ),
        });
    }
    let valid_keep = !keep.is_empty()
        && keep.windows(2).all(|w| w[0] < w[1])
        && keep.iter().all(|&k| k < dims.len());
    if !valid_keep {
        return Err(QmathError::DimensionMismatch {
            detail: format!(
                "keep set {keep:?} is not an ascending subset of 0..{}",
                dims.len()
            ),
        });
    }

    // Row-major strides over the full index.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();

    // Enumerate base offsets for every multi-index of a subsystem subset.
    let offsets = |subset: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &s in subset {
            let mut next = Vec::with_capacity(out.len() * dims[s]);
            for &base in &out {
                for i in 0..dims[s] {
                    next.push(base + i * strides[s]);
                }
            }
            out = next;
        }
        out
    };
    let kept_offsets = offsets(keep);
    let traced_offsets = offsets(&traced);

    let n = kept_offsets.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (a, &ra) in kept_offsets.iter().enumerate() {
        for (b, &rb) in kept_offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &t in &traced_offsets {
                acc += mat.get(ra + t, rb + t);
            }
            out.set(a, b, acc);
        }
    }
    Ok(out)
}
