//! The optics→microwave→qubit channel.
//!
//! A received coherent pulse `|α e^{iθ}⟩` is modeled phenomenologically as an
//! attenuated, thermally heated microwave field — a displaced thermal state
//! with amplitude `β = √η·α e^{iθ}` and occupancy `n̄` — which is then written
//! onto a ground-state qubit through a resonant Jaynes-Cummings interaction
//! and traced out. The pulse phase survives as the azimuthal angle of the
//! qubit's Bloch vector (up to a fixed conventional offset, pinned by a
//! golden test below).

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::qmath::{
    partial_trace, C64, ComplexMatrix, DensityMatrix, QmathError, expm_unitary,
};

/// Planck constant, J·s (exact by the 2019 SI definition).
pub const PLANCK_CONSTANT: f64 = 6.62607015e-34;
/// Boltzmann constant, J/K (exact by the 2019 SI definition).
pub const BOLTZMANN_CONSTANT: f64 = 1.380649e-23;

/// Largest thermal trace deficit a Fock cutoff is allowed to leave behind.
const MAX_TRACE_DEFICIT: f64 = 1e-6;

/// Channel and state-construction failures.
#[derive(Debug, Error)]
pub enum TransductionError {
    /// A pulse or parameter value is outside its physical range.
    #[error("invalid transduction input: {detail}")]
    InvalidInput { detail: String },
    /// The Fock cutoff truncates too much of the thermal distribution.
    #[error(
        "Fock cutoff {n_max} leaves a thermal trace deficit of {deficit:.3e} \
         (limit {MAX_TRACE_DEFICIT:.0e}); raise the cutoff"
    )]
    CutoffTooSmall { n_max: usize, deficit: f64 },
    /// The displacement amplitude is too large for the truncated space.
    #[error(
        "displacement |β|² = {beta_sq:.4} exceeds N_max/4 = {limit:.4}; \
         raise the Fock cutoff"
    )]
    TruncationRisk { beta_sq: f64, limit: f64 },
    /// A matrix-kernel failure surfaced during channel evaluation.
    #[error(transparent)]
    Qmath(#[from] QmathError),
}

/// One received optical pulse: magnitude `|α|` and phase `θ`.
///
/// `|α|²` is the mean photon number. The phase is normalized into `[0, 2π)`
/// on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPulse {
    magnitude: f64,
    phase: f64,
}

impl CoherentPulse {
    /// Builds a pulse, normalizing the phase into `[0, 2π)`.
    pub fn new(magnitude: f64, phase: f64) -> Result<Self, TransductionError> {
        if !magnitude.is_finite() || magnitude < 0.0 {
            return Err(TransductionError::InvalidInput {
                detail: format!("pulse magnitude must be finite and ≥ 0, got {magnitude}"),
            });
        }
        if !phase.is_finite() {
            return Err(TransductionError::InvalidInput {
                detail: format!("pulse phase must be finite, got {phase}"),
            });
        }
        Ok(Self {
            magnitude,
            phase: phase.rem_euclid(TAU),
        })
    }

    /// `|α|`.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// `θ ∈ [0, 2π)`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Mean photon number `|α|²`.
    pub fn mean_photon_number(&self) -> f64 {
        self.magnitude * self.magnitude
    }
}

/// Parameters of the phenomenological transduction channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransductionParams {
    /// Power efficiency η ∈ [0, 1] of the optics→microwave conversion.
    pub efficiency: f64,
    /// Mean thermal occupancy n̄ ≥ 0 of the microwave mode.
    pub thermal_occupancy: f64,
    /// Highest retained Fock level N_max (dimension N_max + 1), ≥ 2.
    pub fock_cutoff: usize,
    /// Dimensionless Jaynes-Cummings g·t product, > 0.
    pub coupling_time: f64,
}

impl Default for TransductionParams {
    /// Lossless, zero-temperature channel with a π/2 swap pulse and a cutoff
    /// comfortable for the default sweep's hottest point.
    fn default() -> Self {
        Self {
            efficiency: 1.0,
            thermal_occupancy: 0.0,
            fock_cutoff: 40,
            coupling_time: PI / 2.0,
        }
    }
}

impl TransductionParams {
    /// Checks every field against its physical range.
    pub fn validate(&self) -> Result<(), TransductionError> {
        let fail = |detail: String| Err(TransductionError::InvalidInput { detail });
        if !self.efficiency.is_finite() || !(0.0..=1.0).contains(&self.efficiency) {
            return fail(format!("efficiency must lie in [0, 1], got {}", self.efficiency));
        }
        if !self.thermal_occupancy.is_finite() || self.thermal_occupancy < 0.0 {
            return fail(format!(
                "thermal occupancy must be finite and ≥ 0, got {}",
                self.thermal_occupancy
            ));
        }
        if self.fock_cutoff < 2 {
            return fail(format!("Fock cutoff must be ≥ 2, got {}", self.fock_cutoff));
        }
        if !self.coupling_time.is_finite() || self.coupling_time <= 0.0 {
            return fail(format!(
                "coupling time must be finite and > 0, got {}",
                self.coupling_time
            ));
        }
        Ok(())
    }
}

/// Bose-Einstein occupancy `1/(exp(hf/kT) − 1)` of a mode at frequency
/// `frequency_hz` in equilibrium at `temperature_kelvin`.
pub fn nbar_from_temperature(
    temperature_kelvin: f64,
    frequency_hz: f64,
) -> Result<f64, TransductionError> {
    if !temperature_kelvin.is_finite() || temperature_kelvin <= 0.0 {
        return Err(TransductionError::InvalidInput {
            detail: format!("temperature must be finite and > 0 K, got {temperature_kelvin}"),
        });
    }
    if !frequency_hz.is_finite() || frequency_hz <= 0.0 {
        return Err(TransductionError::InvalidInput {
            detail: format!("frequency must be finite and > 0 Hz, got {frequency_hz}"),
        });
    }
    let x = PLANCK_CONSTANT * frequency_hz / (BOLTZMANN_CONSTANT * temperature_kelvin);
    // exp_m1 keeps precision for x ≪ 1 and underflows cleanly to 0 for the
    // millikelvin regime where x ≈ 500.
    Ok(x.exp_m1().recip())
}

/// Geometric Fock-level weights `p(n) = n̄ⁿ/(1+n̄)ⁿ⁺¹` for `n ≤ n_max`,
/// together with the truncated tail `1 − Σ p(n) = (n̄/(1+n̄))^{N+1}`.
pub fn thermal_weights(nbar: f64, n_max: usize) -> Result<(Vec<f64>, f64), TransductionError> {
    if !nbar.is_finite() || nbar < 0.0 {
        return Err(TransductionError::InvalidInput {
            detail: format!("thermal occupancy must be finite and ≥ 0, got {nbar}"),
        });
    }
    let ratio = nbar / (1.0 + nbar);
    let mut weights = Vec::with_capacity(n_max + 1);
    let mut p = 1.0 / (1.0 + nbar);
    for _ in 0..=n_max {
        weights.push(p);
        p *= ratio;
    }
    let deficit = ratio.powi(n_max as i32 + 1);
    Ok((weights, deficit))
}

/// Thermal state of occupancy `nbar` on the truncated Fock space
/// `{|0⟩, …, |N_max⟩}`.
///
/// The truncation deficit is recorded as the state's trace tolerance and must
/// stay below `1e-6`.
pub fn thermal_state(nbar: f64, n_max: usize) -> Result<DensityMatrix, TransductionError> {
    let (weights, deficit) = thermal_weights(nbar, n_max)?;
    if deficit >= MAX_TRACE_DEFICIT {
        return Err(TransductionError::CutoffTooSmall { n_max, deficit });
    }
    let diag: Vec<C64> = weights.iter().map(|&w| C64::new(w, 0.0)).collect();
    let mat = ComplexMatrix::from_diagonal(&diag);
    Ok(DensityMatrix::with_trace_tolerance(mat, deficit + 1e-9)?)
}

/// Annihilation operator `a|n⟩ = √n |n−1⟩` on the truncated Fock space.
pub fn annihilation_operator(n_max: usize) -> ComplexMatrix {
    let dim = n_max + 1;
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            C64::new((c as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Displacement operator `D(β) = exp(β a† − β* a)` on the truncated Fock
/// space, built as the unitary of the Hermitian generator `i(β a† − β* a)`.
///
/// Truncation artifacts stay negligible only while the displaced state lives
/// well inside the cutoff; `|β|² ≤ N_max/4` is required.
pub fn displacement_operator(beta: C64, n_max: usize) -> Result<ComplexMatrix, TransductionError> {
    let limit = n_max as f64 / 4.0;
    if beta.norm_sqr() > limit {
        return Err(TransductionError::TruncationRisk {
            beta_sq: beta.norm_sqr(),
            limit,
        });
    }
    let a = annihilation_operator(n_max);
    let i = C64::new(0.0, 1.0);
    let gen = &a.adjoint().scale(i * beta) + &a.scale(i * (-beta.conj()));
    Ok(expm_unitary(&gen, 1.0)?)
}

/// Resonant Jaynes-Cummings generator `a σ₊ + a† σ₋` (g = 1) on
/// field ⊗ qubit, with `|g⟩ = |0⟩` and `σ₊ = |e⟩⟨g|`.
fn jaynes_cummings_hamiltonian(n_max: usize) -> ComplexMatrix {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let sigma_plus = ComplexMatrix::new(2, 2, vec![zero, zero, one, zero])
        .expect("fixed 2x2 literal");
    let sigma_minus = sigma_plus.adjoint();
    let a = annihilation_operator(n_max);
    &a.kron(&sigma_plus) + &a.adjoint().kron(&sigma_minus)
}

/// End-to-end channel: pulse in, qubit state out.
///
/// Pipeline: (1) `β = √η·|α|·e^{iθ}`; (2) field state `D(β) ρ_th D(β)†`;
/// (3) joint state field ⊗ `|g⟩⟨g|`; (4) Jaynes-Cummings evolution for the
/// configured coupling time; (5) partial trace over the field.
pub fn transduce_pulse(
    pulse: &CoherentPulse,
    params: &TransductionParams,
) -> Result<DensityMatrix, TransductionError> {
    params.validate()?;
    let n_max = params.fock_cutoff;
    let amp = params.efficiency.sqrt() * pulse.magnitude();
    let beta = C64::from_polar(amp, pulse.phase());

    let rho_th = thermal_state(params.thermal_occupancy, n_max)?;
    let d = displacement_operator(beta, n_max)?;
    let displaced = &(&d * rho_th.matrix()) * &d.adjoint();
    let field = DensityMatrix::with_trace_tolerance(displaced, rho_th.trace_tol())?;

    let ground = DensityMatrix::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)])?;
    let joint = field.tensor(&ground);

    let u = expm_unitary(&jaynes_cummings_hamiltonian(n_max), params.coupling_time)?;
    let evolved = &(&u * joint.matrix()) * &u.adjoint();
    let evolved = DensityMatrix::with_trace_tolerance(evolved, joint.trace_tol())?;

    Ok(partial_trace(&evolved, &[n_max + 1, 2], &[1])?)
}

/// Bloch vector `(Tr ρσx, Tr ρσy, Tr ρσz)` of a qubit state.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<(f64, f64, f64), TransductionError> {
    if rho.dim() != 2 {
        return Err(TransductionError::InvalidInput {
            detail: format!("Bloch vector needs a qubit state, got dimension {}", rho.dim()),
        });
    }
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let sx = ComplexMatrix::new(2, 2, vec![zero, one, one, zero]).expect("2x2 literal");
    let sy = ComplexMatrix::new(2, 2, vec![zero, -i, i, zero]).expect("2x2 literal");
    let sz = ComplexMatrix::new(2, 2, vec![one, zero, zero, -one]).expect("2x2 literal");
    let expect = |p: &ComplexMatrix| (rho.matrix() * p).trace().re;
    Ok((expect(&sx), expect(&sy), expect(&sz)))
}
