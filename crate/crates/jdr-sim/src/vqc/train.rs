//! Multi-restart training of the variational receiver.
//!
//! Each restart starts from fresh uniform angles and alternates two moves:
//! refresh the maximum-likelihood outcome assignment, then take one
//! optimizer step with that assignment frozen (the fixed-assignment loss is
//! the piecewise-smooth surrogate the parameter-shift rule differentiates).
//! Restarts draw from per-index RNG streams of one seed, so serial and
//! parallel execution — and any two runs with the same config — produce
//! bit-identical results.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    circuit_distributions, fixed_assignment_loss, ml_assignment, parameter_shift_grad,
    AnsatzSpec, ParamVector, VqcError,
};
use crate::qmath::DensityMatrix;

/// Which optimizer drives the frozen-assignment steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimizer {
    /// Exact parameter-shift gradient descent with a fixed step size.
    GradientParameterShift,
    /// Simultaneous-perturbation stochastic approximation: two loss probes
    /// per step regardless of parameter count.
    Spsa,
}

/// SPSA gain schedule `a_k = a/(k+1)^α`, `c_k = c/(k+1)^γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpsaParams {
    /// Step-size numerator.
    pub a: f64,
    /// Perturbation-size numerator.
    pub c: f64,
    /// Step decay exponent.
    pub alpha: f64,
    /// Perturbation decay exponent.
    pub gamma: f64,
}

impl Default for SpsaParams {
    fn default() -> Self {
        Self {
            a: 0.15,
            c: 0.1,
            alpha: 0.602,
            gamma: 0.101,
        }
    }
}

/// Training-loop configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    /// Independent random initializations; the best final loss wins.
    pub restarts: usize,
    /// Outer-iteration budget per restart.
    pub max_outer_iters: usize,
    /// Step engine.
    pub optimizer: Optimizer,
    /// Gradient-descent step size.
    pub step_size: f64,
    /// Seed of the per-restart RNG streams.
    pub seed: u64,
    /// A restart stops once an outer iteration improves the loss by less
    /// than this.
    pub convergence_tol: f64,
    /// SPSA gains (ignored by the gradient optimizer).
    pub spsa: SpsaParams,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_outer_iters: 200,
            optimizer: Optimizer::GradientParameterShift,
            step_size: 0.1,
            seed: 42,
            convergence_tol: 1e-7,
            spsa: SpsaParams::default(),
        }
    }
}

impl TrainConfig {
    /// Checks every field against its documented range.
    pub fn validate(&self) -> Result<(), VqcError> {
        let fail = |detail: String| Err(VqcError::InvalidInput { detail });
        if self.restarts == 0 {
            return fail("restarts must be ≥ 1".into());
        }
        if self.max_outer_iters == 0 {
            return fail("max_outer_iters must be ≥ 1".into());
        }
        if !self.step_size.is_finite() || self.step_size <= 0.0 {
            return fail(format!("step size must be finite and > 0, got {}", self.step_size));
        }
        if !self.convergence_tol.is_finite() || self.convergence_tol <= 0.0 {
            return fail(format!(
                "convergence tolerance must be finite and > 0, got {}",
                self.convergence_tol
            ));
        }
        for (name, v) in [
            ("spsa.a", self.spsa.a),
            ("spsa.c", self.spsa.c),
            ("spsa.alpha", self.spsa.alpha),
            ("spsa.gamma", self.spsa.gamma),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return fail(format!("{name} must be finite and > 0, got {v}"));
            }
        }
        Ok(())
    }
}

/// Outcome of a [`train`] call.
#[derive(Debug, Clone)]
pub struct TrainResult {
    /// Best parameters found across all restarts.
    pub best_params: ParamVector,
    /// Maximum-likelihood error probability of `best_params`.
    pub p_err: f64,
    /// `(global outer iteration, best loss seen so far)` — non-increasing in
    /// the second component, spanning all restarts in order.
    pub trajectory: Vec<(usize, f64)>,
    /// Outcome→hypothesis map of the best parameters.
    pub assignment: Vec<usize>,
    /// Restart index that produced the winner.
    pub best_restart: usize,
    /// Outer iterations spent across all restarts (the training effort).
    pub total_outer_iterations: usize,
}

/// Trains the receiver on `ensemble`, returning the best restart.
///
/// Never fails on poor convergence — the result simply carries the best loss
/// reached. Identical `(spec, ensemble, config)` inputs give bit-identical
/// results.
pub fn train(
    spec: &AnsatzSpec,
    ensemble: &[(f64, DensityMatrix)],
    config: &TrainConfig,
) -> Result<TrainResult, VqcError> {
    config.validate()?;
    let param_count = spec.parameter_count();

    let mut best_loss = f64::INFINITY;
    let mut best_params: Vec<f64> = vec![0.0; param_count];
    let mut best_restart = 0usize;
    let mut trajectory = Vec::new();
    let mut global_iter = 0usize;

    for restart in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let mut params: Vec<f64> = (0..param_count).map(|_| rng.random::<f64>() * TAU).collect();

        let (dist, priors) = circuit_distributions(spec, &ParamVector::new(params.clone())?, ensemble)?;
        let (mut assignment, mut loss) = ml_assignment(&dist, &priors);
        if loss < best_loss {
            best_loss = loss;
            best_params = params.clone();
            best_restart = restart;
        }

        for outer in 0..config.max_outer_iters {
            // One optimizer step with the current assignment frozen.
            match config.optimizer {
                Optimizer::GradientParameterShift => {
                    let grad = parameter_shift_grad(
                        spec,
                        &ParamVector::new(params.clone())?,
                        ensemble,
                        &assignment,
                    )?;
                    for (p, g) in params.iter_mut().zip(&grad) {
                        *p -= config.step_size * g;
                    }
                }
                Optimizer::Spsa => {
                    let k = outer as f64 + 1.0;
                    let ak = config.spsa.a / k.powf(config.spsa.alpha);
                    let ck = config.spsa.c / k.powf(config.spsa.gamma);
                    let delta: Vec<f64> = (0..param_count)
                        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                        .collect();
                    let probe = |sign: f64, params: &[f64]| -> Result<f64, VqcError> {
                        let shifted: Vec<f64> = params
                            .iter()
                            .zip(&delta)
                            .map(|(p, d)| p + sign * ck * d)
                            .collect();
                        fixed_assignment_loss(
                            spec,
                            &ParamVector::new(shifted)?,
                            ensemble,
                            &assignment,
                        )
                    };
                    let plus = probe(1.0, &params)?;
                    let minus = probe(-1.0, &params)?;
                    let scale = (plus - minus) / (2.0 * ck);
                    for (p, d) in params.iter_mut().zip(&delta) {
                        // 1/d = d for ±1 perturbations.
                        *p -= ak * scale * d;
                    }
                }
            }

            // Refresh the assignment on the moved parameters; this is also
            // next iteration's frozen map.
            let (dist, priors) =
                circuit_distributions(spec, &ParamVector::new(params.clone())?, ensemble)?;
            let (new_assignment, new_loss) = ml_assignment(&dist, &priors);
            if new_loss < best_loss {
                best_loss = new_loss;
                best_params = params.clone();
                best_restart = restart;
            }
            global_iter += 1;
            trajectory.push((global_iter, best_loss));

            let improvement = loss - new_loss;
            assignment = new_assignment;
            loss = new_loss;
            if improvement < config.convergence_tol {
                break;
            }
        }
    }

    let best = ParamVector::new(best_params)?;
    let (dist, priors) = circuit_distributions(spec, &best, ensemble)?;
    let (assignment, p_err) = ml_assignment(&dist, &priors);
    debug_assert!((p_err - best_loss).abs() < 1e-12);
    Ok(TrainResult {
        best_params: best,
        p_err,
        trajectory,
        assignment,
        best_restart,
        total_outer_iterations: global_iter,
    })
}
