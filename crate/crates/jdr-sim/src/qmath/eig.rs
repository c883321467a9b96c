use nalgebra::DMatrix;

use super::{C64, ComplexMatrix, QmathError};

/// Components below this magnitude are treated as zero when fixing
/// eigenvector phases.
const PHASE_PIVOT_TOL: f64 = 1e-12;

/// Hermitian eigendecomposition `A = V diag(λ) V^H`.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Real eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered to match `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermEig {
    /// Rebuild `V f(diag) V^H` for a scalar function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let fd = ComplexMatrix::from_diagonal(
            &self.eigenvalues.iter().map(|&l| f(l)).collect::<Vec<_>>(),
        );
        &(v * &fd) * &v.adjoint()
    }

    /// Reconstruct the original matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|l| C64::new(l, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back in descending order; each eigenvector is phased so
/// its first component above `1e-12` in magnitude is real and positive,
/// which keeps golden tests stable across runs.
pub fn herm_eig(a: &ComplexMatrix) -> Result<HermEig, QmathError> {
    a.require_hermitian()?;
    let n = a.rows();
    // Symmetrize away the sub-tolerance asymmetry before handing the matrix
    // to the tridiagonalization.
    let sym = a.symmetrized();
    let na = DMatrix::from_fn(n, n, |i, j| sym.get(i, j));
    let eig = nalgebra::linalg::SymmetricEigen::try_new(na, 1e-14, 0)
        .ok_or(QmathError::NoConvergence)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let column: Vec<C64> = (0..n).map(|r| eig.eigenvectors[(r, src)]).collect();
        let phase = column
            .iter()
            .find(|z| z.norm() > PHASE_PIVOT_TOL)
            .map(|z| z.conj() / z.norm())
            .unwrap_or_else(|| C64::new(1.0, 0.0));
        for (r, z) in column.iter().enumerate() {
            eigenvectors.set(r, col, z * phase);
        }
    }

    Ok(HermEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Trace norm `‖A‖₁ = Σ|λᵢ|` of a Hermitian matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64, QmathError> {
    Ok(herm_eig(a)?.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Unitary `exp(-i h t)` of a Hermitian generator, via eigendecomposition.
pub fn expm_unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, QmathError> {
    Ok(herm_eig(h)?.apply_fn(|l| C64::new(0.0, -l * t).exp()))
}
