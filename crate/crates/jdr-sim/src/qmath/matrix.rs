use std::ops::{Add, Mul, Sub};

use super::{C64, QmathError, HERMITICITY_TOL};

/// Dense complex matrix in row-major order.
///
/// Shape arithmetic errors in plain algebra (`+`, `-`, `*`, [`kron`]) are
/// programmer errors and panic; fallible validation lives in the
/// constructors and in the operations that have contracts attached
/// (eigendecomposition, partial trace, density-matrix construction).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, rejecting NaN/Inf and shape
    /// mismatches.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, QmathError> {
        if data.len() != rows * cols {
            return Err(QmathError::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(QmathError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Build entries from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Diagonal matrix from complex entries.
    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Rank-one projector |v⟩⟨v| from (not necessarily normalized) amplitudes.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        assert!(self.is_square(), "diagonal of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise deviation from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entry-wise deviation from the adjoint; zero for Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    /// `(A + A^H)/2`; callers accumulate round-off and re-symmetrize here.
    pub fn symmetrized(&self) -> Self {
        assert!(self.is_square(), "symmetrization of a non-square matrix");
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// Checks squareness and Hermiticity within [`HERMITICITY_TOL`].
    pub fn require_hermitian(&self) -> Result<(), QmathError> {
        if !self.is_square() {
            return Err(QmathError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(QmathError::NotHermitian { deviation });
        }
        Ok(())
    }
}

/// Kronecker product; the result has shape `(ra·rb) × (ca·cb)` and the
/// left factor owns the most significant index block.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(ra * rb, ca * cb, |i, j| {
        a.get(i / rb, j / cb) * b.get(i % rb, j % cb)
    })
}

impl ComplexMatrix {
    /// Method form of [`kron`].
    pub fn kron(&self, other: &Self) -> Self {
        kron(self, other)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in addition"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in subtraction"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in multiplication");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn new_rejects_bad_shape_and_nan() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(QmathError::EntryCount { expected: 4, got: 3 })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(QmathError::NonFinite)
        ));
    }

    #[test]
    fn kron_identity_gives_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_dimensions_multiply() {
        let a = ComplexMatrix::zeros(2, 2);
        let b = ComplexMatrix::zeros(3, 3);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
    }

    #[test]
    fn kron_pauli_x_with_identity() {
        // Expanding PauliX ⊗ I2 by hand: the (0,2) entry is 1, the (0,0) is 0.
        let k = kron(&pauli_x(), &ComplexMatrix::identity(2));
        assert_eq!(k.get(0, 2), c(1.0, 0.0));
        assert_eq!(k.get(0, 0), c(0.0, 0.0));
        assert_eq!(k.get(1, 3), c(1.0, 0.0));
        assert_eq!(k.get(2, 0), c(1.0, 0.0));
    }

    #[test]
    fn kron_is_bilinear() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 0.3 * i as f64));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| c(0.5 * j as f64, (i as f64) - 1.0));
        let d = ComplexMatrix::from_fn(2, 2, |i, j| c(1.0 - j as f64, 0.1 * (i + j) as f64));
        let lhs = kron(&(&a + &d), &b);
        let rhs = &kron(&a, &b) + &kron(&d, &b);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        let lhs2 = kron(&a.scale(c(0.0, 2.0)), &b);
        let rhs2 = kron(&a, &b).scale(c(0.0, 2.0));
        assert!(lhs2.max_abs_diff(&rhs2) < 1e-14);
    }

    #[test]
    fn adjoint_and_hermiticity() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.5, 0.25), c(0.5, -0.25), c(-2.0, 0.0)])
            .unwrap();
        assert!(m.is_hermitian(1e-12));
        assert!(m.adjoint().max_abs_diff(&m) < 1e-15);
        let skew = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(!skew.is_hermitian(1e-12));
        assert!(skew.symmetrized().is_hermitian(0.0));
    }

    #[test]
    fn matmul_against_hand_product() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let b = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let p = &a * &b;
        assert_eq!(p.get(0, 0), c(0.0, 1.0));
        assert_eq!(p.get(0, 1), c(1.0, 0.0));
        assert_eq!(p.get(1, 0), c(0.0, 0.0));
        assert_eq!(p.get(1, 1), c(2.0, 0.0));
    }
}
