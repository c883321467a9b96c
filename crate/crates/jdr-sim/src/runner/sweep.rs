//! The (temperature, magnitude) grid run: transduce, bound, train, collect.
//!
//! Each grid point is independent, so points run in parallel via rayon; the
//! output row order is fixed by sorting the grid (temperature ascending,
//! then magnitude ascending) before dispatch, which keeps results
//! deterministic regardless of thread count. A failing point does not abort
//! the run — its coordinates and cause are collected and reported together
//! after every point has been attempted.

use rayon::prelude::*;

use super::{RunnerError, SweepConfig};
use crate::codebook::{ensemble, Codebook};
use crate::discrimination::{
    classical_codeword_baseline, optimal_povm_default, povm_error_prob, pretty_good_measurement,
};
use crate::transduction::nbar_from_temperature;
use crate::vqc::{train, AnsatzSpec};

/// One completed grid point; fields mirror the CSV columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Pulse magnitude |α|.
    pub magnitude: f64,
    /// Mean photon number per pulse |α|².
    pub alpha_sq: f64,
    /// Thermal occupancy n̄ of the bath at this grid point's temperature.
    pub nbar: f64,
    /// Pulse-by-pulse heterodyne baseline for the same codebook.
    pub p_err_classical: f64,
    /// Exact minimum error probability (converged JRF POVM).
    pub p_err_optimal: f64,
    /// Pretty-good-measurement error probability.
    pub p_err_pgm: f64,
    /// Error probability of the best trained circuit.
    pub p_err_vqc: f64,
    /// Optimality-certificate residual of the JRF POVM.
    pub ykl_residual: f64,
    /// Total training iterations spent across all restarts.
    pub train_iterations: usize,
    /// Training seed used at this point.
    pub seed: u64,
}

/// A grid point that failed, with enough context to find it.
#[derive(Debug, Clone)]
pub struct PointFailure {
    /// Bath temperature of the failing point in kelvin.
    pub temperature_kelvin: f64,
    /// Pulse magnitude |α| of the failing point.
    pub magnitude: f64,
    /// Human-readable cause.
    pub detail: String,
}

impl std::fmt::Display for PointFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "T = {} K, |alpha| = {}: {}",
            self.temperature_kelvin, self.magnitude, self.detail
        )
    }
}

/// Run the full sweep described by `config`.
///
/// Returns one row per (temperature, magnitude) pair, sorted by temperature
/// then magnitude, both ascending. If any point fails the remaining points
/// still run and the error lists every failure with its grid coordinates.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, RunnerError> {
    config.validate()?;
    let codebook = config.load_codebook()?;
    // Information pulses for the classical baseline: a codebook carrying b
    // bits needs ⌈b⌉ independently-detected BPSK pulses.
    let info_pulses = (codebook.info_bits().ceil() as u32).max(1);
    let ansatz = AnsatzSpec::new(codebook.length(), config.ansatz_layers)
        .map_err(|e| RunnerError::config(e.to_string()))?;

    let mut temperatures = config.temperatures_kelvin.clone();
    temperatures.sort_by(f64::total_cmp);
    let mut magnitudes = config.magnitudes.clone();
    magnitudes.sort_by(f64::total_cmp);

    let grid: Vec<(f64, f64)> = temperatures
        .iter()
        .flat_map(|&t| magnitudes.iter().map(move |&m| (t, m)))
        .collect();

    let results: Vec<Result<SweepRow, PointFailure>> = grid
        .par_iter()
        .map(|&(temperature, magnitude)| {
            compute_point(config, &codebook, &ansatz, info_pulses, temperature, magnitude)
        })
        .collect();

    let total = results.len();
    let mut rows = Vec::with_capacity(total);
    let mut failures = Vec::new();
    for result in results {
        match result {
            Ok(row) => rows.push(row),
            Err(failure) => failures.push(failure),
        }
    }
    if failures.is_empty() {
        Ok(rows)
    } else {
        Err(RunnerError::SweepFailures { failures, total })
    }
}

fn compute_point(
    config: &SweepConfig,
    codebook: &Codebook,
    ansatz: &AnsatzSpec,
    info_pulses: u32,
    temperature: f64,
    magnitude: f64,
) -> Result<SweepRow, PointFailure> {
    let fail = |detail: String| PointFailure {
        temperature_kelvin: temperature,
        magnitude,
        detail,
    };

    let nbar = nbar_from_temperature(temperature, config.frequency_hz)
        .map_err(|e| fail(e.to_string()))?;
    let params = config.transduction_params(nbar);
    let states = ensemble(codebook, magnitude, &params).map_err(|e| fail(e.to_string()))?;

    let p_err_classical = classical_codeword_baseline(magnitude, info_pulses);
    let pgm = pretty_good_measurement(&states).map_err(|e| fail(e.to_string()))?;
    let p_err_pgm = povm_error_prob(&states, &pgm).map_err(|e| fail(e.to_string()))?;
    let optimal = optimal_povm_default(&states).map_err(|e| fail(e.to_string()))?;
    let trained = train(ansatz, &states, &config.train).map_err(|e| fail(e.to_string()))?;

    let row = SweepRow {
        magnitude,
        alpha_sq: magnitude * magnitude,
        nbar,
        p_err_classical,
        p_err_optimal: optimal.p_err,
        p_err_pgm,
        p_err_vqc: trained.p_err,
        ykl_residual: optimal.ykl_residual,
        train_iterations: trained.total_outer_iterations,
        seed: config.train.seed,
    };

    // The optimal POVM lower-bounds every measurement; a violation beyond
    // numerical slack means one of the solvers is wrong for this input.
    const SLACK: f64 = 1e-8;
    if row.p_err_vqc < row.p_err_optimal - SLACK
        || row.p_err_pgm < row.p_err_optimal - SLACK
        || !(0.0..=1.0).contains(&row.p_err_optimal)
        || !(0.0..=1.0).contains(&row.p_err_vqc)
    {
        return Err(fail(format!(
            "dominance check failed: optimal {} vs pgm {} vs vqc {}",
            row.p_err_optimal, row.p_err_pgm, row.p_err_vqc
        )));
    }
    Ok(row)
}
