//! The trainable joint receiver: a shallow hardware-efficient circuit
//! applied to codeword states, computational-basis readout, and
//! maximum-likelihood post-processing of the outcomes.
//!
//! The ansatz is an initial Ry+Rz rotation layer followed by `L` blocks of
//! [CZ ring, Ry+Rz layer], giving `2n(L+1)` parameters. Everything is exact
//! density-matrix simulation — no shot noise — so the decoder's error
//! probability is directly comparable to the optimal-POVM oracle.

mod train;

pub use train::{train, Optimizer, SpsaParams, TrainConfig, TrainResult};

use thiserror::Error;

use crate::qmath::{C64, ComplexMatrix, DensityMatrix, QmathError};

/// Variational-receiver failures.
#[derive(Debug, Error)]
pub enum VqcError {
    /// Ansatz or training configuration out of range.
    #[error("invalid ansatz/training input: {detail}")]
    InvalidInput { detail: String },
    /// Parameter vector length does not match the ansatz.
    #[error("ansatz needs {expected} parameters, got {got}")]
    ParamLengthMismatch { expected: usize, got: usize },
    /// State dimension does not match the qubit count.
    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },
    /// Matrix-kernel failure.
    #[error(transparent)]
    Qmath(#[from] QmathError),
}

/// Shape of the hardware-efficient ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    num_qubits: usize,
    num_layers: usize,
}

impl AnsatzSpec {
    /// `num_qubits ≥ 1` qubits, `num_layers ≥ 0` entangling blocks.
    pub fn new(num_qubits: usize, num_layers: usize) -> Result<Self, VqcError> {
        if num_qubits == 0 {
            return Err(VqcError::InvalidInput {
                detail: "ansatz needs at least one qubit".into(),
            });
        }
        Ok(Self {
            num_qubits,
            num_layers,
        })
    }

    /// Number of qubits `n`.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of entangling blocks `L`.
    pub fn num_layers(&self) -> usize {
        self.num_layers
    }

    /// Hilbert-space dimension `2ⁿ`.
    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    /// Total parameter count `2n(L+1)`.
    pub fn parameter_count(&self) -> usize {
        2 * self.num_qubits * (self.num_layers + 1)
    }
}

/// A finite vector of rotation angles.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    /// Wraps angles, rejecting non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self, VqcError> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(VqcError::InvalidInput {
                detail: format!("parameter {bad} is not finite"),
            });
        }
        Ok(Self(values))
    }

    /// The angles.
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Number of parameters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the vector is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn ry(theta: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    ComplexMatrix::new(
        2,
        2,
        vec![
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ],
    )
    .expect("2x2 literal")
}

fn rz(theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[
        C64::from_polar(1.0, -theta / 2.0),
        C64::from_polar(1.0, theta / 2.0),
    ])
}

/// One rotation layer ⊗_q Rz(θ_{z,q})·Ry(θ_{y,q}); `angles` holds
/// `(ry, rz)` pairs per qubit, qubit 0 first (most significant factor).
fn rotation_layer(num_qubits: usize, angles: &[f64]) -> ComplexMatrix {
    let mut layer: Option<ComplexMatrix> = None;
    for q in 0..num_qubits {
        let gate = &rz(angles[2 * q + 1]) * &ry(angles[2 * q]);
        layer = Some(match layer {
            None => gate,
            Some(l) => l.kron(&gate),
        });
    }
    layer.expect("at least one qubit")
}

/// Diagonal of the CZ ring over edges `(i, i+1 mod n)`.
///
/// The edge set is deduplicated, so `n = 2` applies a single CZ (the ring
/// would otherwise traverse the same pair twice and cancel) and `n = 1` has
/// no entangler at all.
fn cz_ring_diagonal(num_qubits: usize) -> Option<Vec<f64>> {
    let n = num_qubits;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        if i == j {
            continue;
        }
        let edge = (i.min(j), i.max(j));
        if !edges.contains(&edge) {
            edges.push(edge);
        }
    }
    if edges.is_empty() {
        return None;
    }
    let dim = 1usize << n;
    let bit = |state: usize, q: usize| (state >> (n - 1 - q)) & 1;
    let diag = (0..dim)
        .map(|state| {
            let flips = edges
                .iter()
                .filter(|(i, j)| bit(state, *i) == 1 && bit(state, *j) == 1)
                .count();
            if flips % 2 == 1 { -1.0 } else { 1.0 }
        })
        .collect();
    Some(diag)
}

/// The full circuit unitary: initial rotation layer, then `L` repetitions of
/// [CZ ring, rotation layer].
pub fn circuit_unitary(spec: &AnsatzSpec, params: &ParamVector) -> Result<ComplexMatrix, VqcError> {
    if params.len() != spec.parameter_count() {
        return Err(VqcError::ParamLengthMismatch {
            expected: spec.parameter_count(),
            got: params.len(),
        });
    }
    let n = spec.num_qubits();
    let per_layer = 2 * n;
    let angles = params.values();
    let mut u = rotation_layer(n, &angles[..per_layer]);
    let cz = cz_ring_diagonal(n);
    for layer in 1..=spec.num_layers() {
        if let Some(diag) = &cz {
            // Left-multiplying by a diagonal matrix scales the rows.
            let mut scaled = u.clone();
            for (row, &sign) in diag.iter().enumerate() {
                if sign < 0.0 {
                    for col in 0..scaled.cols() {
                        scaled.set(row, col, -scaled.get(row, col));
                    }
                }
            }
            u = scaled;
        }
        let slice = &angles[layer * per_layer..(layer + 1) * per_layer];
        u = &rotation_layer(n, slice) * &u;
    }
    Ok(u)
}

/// Conjugates `rho` by the circuit unitary: `U ρ U†`.
pub fn apply_circuit(
    spec: &AnsatzSpec,
    params: &ParamVector,
    rho: &DensityMatrix,
) -> Result<DensityMatrix, VqcError> {
    if rho.dim() != spec.dim() {
        return Err(VqcError::DimensionMismatch {
            detail: format!(
                "state dim {} does not match {} qubits (expected {})",
                rho.dim(),
                spec.num_qubits(),
                spec.dim()
            ),
        });
    }
    let u = circuit_unitary(spec, params)?;
    let evolved = &(&u * rho.matrix()) * &u.adjoint();
    Ok(DensityMatrix::with_trace_tolerance(
        evolved,
        rho.trace_tol(),
    )?)
}

/// Computational-basis outcome distribution: the clamped diagonal of `rho`.
///
/// Entries within `−1e−9` of zero are clamped up; the sum equals the state's
/// trace, i.e. 1 up to the recorded truncation deficit.
pub fn measurement_distribution(rho: &DensityMatrix) -> Vec<f64> {
    let probs: Vec<f64> = rho
        .matrix()
        .diagonal()
        .iter()
        .map(|z| z.re.max(0.0))
        .collect();
    debug_assert!(
        (probs.iter().sum::<f64>() - 1.0).abs() <= rho.trace_tol() + 1e-8,
        "measurement distribution normalization drifted"
    );
    probs
}

/// Maximum-likelihood outcome assignment.
///
/// Each outcome `o` goes to the hypothesis maximizing `p_m·P(o|m)`, ties
/// broken toward the lowest index. Returns the map and its error
/// probability `1 − Σ_o max_m p_m·P(o|m)`.
///
/// Panics if the distribution rows are ragged or don't match the priors —
/// callers own those shapes.
pub fn ml_assignment(distributions: &[Vec<f64>], priors: &[f64]) -> (Vec<usize>, f64) {
    assert!(
        distributions.len() >= 2 && distributions.len() == priors.len(),
        "need one distribution row per hypothesis (≥ 2)"
    );
    let outcomes = distributions[0].len();
    assert!(
        distributions.iter().all(|row| row.len() == outcomes),
        "distribution rows must have equal length"
    );
    let mut assignment = Vec::with_capacity(outcomes);
    let mut success = 0.0;
    for o in 0..outcomes {
        let mut best_m = 0;
        let mut best_score = priors[0] * distributions[0][o];
        for (m, row) in distributions.iter().enumerate().skip(1) {
            let score = priors[m] * row[o];
            if score > best_score {
                best_score = score;
                best_m = m;
            }
        }
        assignment.push(best_m);
        success += best_score;
    }
    (assignment, (1.0 - success).clamp(0.0, 1.0))
}

/// Joint-receiver loss: apply the circuit to every codeword state, read out,
/// and post-process with the optimal (maximum-likelihood) assignment.
pub fn loss_p_err(
    spec: &AnsatzSpec,
    params: &ParamVector,
    ensemble: &[(f64, DensityMatrix)],
) -> Result<f64, VqcError> {
    let (distributions, priors) = circuit_distributions(spec, params, ensemble)?;
    Ok(ml_assignment(&distributions, &priors).1)
}

/// Loss under a *frozen* outcome→hypothesis map (the piecewise-smooth
/// surrogate differentiated during training).
pub fn fixed_assignment_loss(
    spec: &AnsatzSpec,
    params: &ParamVector,
    ensemble: &[(f64, DensityMatrix)],
    assignment: &[usize],
) -> Result<f64, VqcError> {
    let (distributions, priors) = circuit_distributions(spec, params, ensemble)?;
    let outcomes = distributions[0].len();
    assert!(
        assignment.len() == outcomes,
        "assignment must cover all {outcomes} outcomes"
    );
    let mut success = 0.0;
    for (o, &m) in assignment.iter().enumerate() {
        success += priors[m] * distributions[m][o];
    }
    Ok((1.0 - success).clamp(0.0, 1.0))
}

fn circuit_distributions(
    spec: &AnsatzSpec,
    params: &ParamVector,
    ensemble: &[(f64, DensityMatrix)],
) -> Result<(Vec<Vec<f64>>, Vec<f64>), VqcError> {
    if ensemble.len() < 2 {
        return Err(VqcError::InvalidInput {
            detail: "ensemble needs at least 2 hypotheses".into(),
        });
    }
    let mut distributions = Vec::with_capacity(ensemble.len());
    let mut priors = Vec::with_capacity(ensemble.len());
    for (prior, rho) in ensemble {
        distributions.push(measurement_distribution(&apply_circuit(spec, params, rho)?));
        priors.push(*prior);
    }
    Ok((distributions, priors))
}

/// Exact gradient of [`fixed_assignment_loss`] via the parameter-shift rule
/// `∂L/∂θ_j = ½[L(θ_j + π/2) − L(θ_j − π/2)]`, valid for Ry/Rz-generated
/// gates.
pub fn parameter_shift_grad(
    spec: &AnsatzSpec,
    params: &ParamVector,
    ensemble: &[(f64, DensityMatrix)],
    assignment: &[usize],
) -> Result<Vec<f64>, VqcError> {
    let base = params.values();
    let mut grad = Vec::with_capacity(base.len());
    for j in 0..base.len() {
        let mut shifted = base.to_vec();
        shifted[j] = base[j] + std::f64::consts::FRAC_PI_2;
        let plus =
            fixed_assignment_loss(spec, &ParamVector::new(shifted.clone())?, ensemble, assignment)?;
        shifted[j] = base[j] - std::f64::consts::FRAC_PI_2;
        let minus = fixed_assignment_loss(spec, &ParamVector::new(shifted)?, ensemble, assignment)?;
        grad.push(0.5 * (plus - minus));
    }
    Ok(grad)
}
