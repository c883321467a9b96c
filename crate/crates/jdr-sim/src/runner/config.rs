//! Sweep configuration: baked-in defaults, TOML file loading, and
//! `key.path=value` overrides.
//!
//! The default configuration reproduces the headline experiment: the
//! 3-pulse parity code swept over |α| ∈ {0.05, 0.10, …, 1.00} at 1 mK and
//! 1 K for a 10 GHz qubit, with a 3-layer ansatz and eight training
//! restarts. Every knob can be changed from a TOML file (`--config`) or a
//! dotted-path override (`--set channel.efficiency=0.9`); overrides are
//! applied after the file so they always win. Unknown keys anywhere are an
//! error, so typos fail fast instead of silently running the defaults.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::RunnerError;
use crate::codebook::{parity_code_3_2, parse_codebook, Codebook};
use crate::transduction::TransductionParams;
use crate::vqc::{Optimizer, SpsaParams, TrainConfig};

/// Name accepted by `codebook.source` for the built-in 3-pulse parity code.
pub const BUILTIN_PARITY_CODE: &str = "parity_3_2";

/// Where the codeword phase patterns come from.
#[derive(Debug, Clone, PartialEq)]
pub enum CodebookSource {
    /// The built-in [3, 2] even-parity BPSK code.
    Parity32,
    /// A codebook file in the `+`/`-` text format of
    /// [`parse_codebook`](crate::codebook::parse_codebook).
    File(PathBuf),
}

impl CodebookSource {
    fn from_key(source: &str) -> Self {
        if source == BUILTIN_PARITY_CODE {
            Self::Parity32
        } else {
            Self::File(PathBuf::from(source))
        }
    }

    /// Load the codebook this source points at.
    pub fn load(&self) -> Result<Codebook, RunnerError> {
        match self {
            Self::Parity32 => Ok(parity_code_3_2()),
            Self::File(path) => {
                let text =
                    fs::read_to_string(path).map_err(|e| RunnerError::io(path.clone(), e))?;
                parse_codebook(&text).map_err(|e| {
                    RunnerError::config(format!("codebook file {}: {e}", path.display()))
                })
            }
        }
    }
}

/// Fully resolved sweep configuration.
///
/// Obtain one through [`load_config`] (file + overrides) or
/// [`SweepConfig::default`] and mutate fields directly.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Pulse magnitudes |α| to sweep, in the order given (sorted before the
    /// run).
    pub magnitudes: Vec<f64>,
    /// Bath temperatures in kelvin.
    pub temperatures_kelvin: Vec<f64>,
    /// Qubit/cavity transition frequency in hertz.
    pub frequency_hz: f64,
    /// Heterodyne transduction efficiency η ∈ [0, 1].
    pub efficiency: f64,
    /// Highest Fock index kept in the cavity-field truncation.
    pub fock_cutoff: usize,
    /// Jaynes–Cummings interaction time (g = 1 units); π/2 is a full swap.
    pub coupling_time: f64,
    /// Number of entangling layers in the decoder ansatz.
    pub ansatz_layers: usize,
    /// Variational training schedule.
    pub train: TrainConfig,
    /// Codeword phase patterns to decode.
    pub codebook_source: CodebookSource,
    /// Default CSV output path for the `sweep` subcommand.
    pub output_path: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        RawConfig::default()
            .resolve()
            .expect("built-in defaults are valid")
    }
}

impl SweepConfig {
    /// Channel parameters at a given thermal occupancy.
    pub fn transduction_params(&self, thermal_occupancy: f64) -> TransductionParams {
        TransductionParams {
            efficiency: self.efficiency,
            thermal_occupancy,
            fock_cutoff: self.fock_cutoff,
            coupling_time: self.coupling_time,
        }
    }

    /// Load the configured codebook.
    pub fn load_codebook(&self) -> Result<Codebook, RunnerError> {
        self.codebook_source.load()
    }

    /// Check every field for basic sanity, returning a config error naming
    /// the first offender.
    pub fn validate(&self) -> Result<(), RunnerError> {
        if self.magnitudes.is_empty() {
            return Err(RunnerError::config("sweep.magnitudes must be non-empty"));
        }
        if let Some(bad) = self
            .magnitudes
            .iter()
            .find(|m| !m.is_finite() || **m < 0.0)
        {
            return Err(RunnerError::config(format!(
                "sweep.magnitudes entries must be finite and >= 0, got {bad}"
            )));
        }
        if self.temperatures_kelvin.is_empty() {
            return Err(RunnerError::config(
                "sweep.temperatures_kelvin must be non-empty",
            ));
        }
        if let Some(bad) = self
            .temperatures_kelvin
            .iter()
            .find(|t| !t.is_finite() || **t <= 0.0)
        {
            return Err(RunnerError::config(format!(
                "sweep.temperatures_kelvin entries must be finite and > 0, got {bad}"
            )));
        }
        if !self.frequency_hz.is_finite() || self.frequency_hz <= 0.0 {
            return Err(RunnerError::config(format!(
                "channel.frequency_hz must be finite and > 0, got {}",
                self.frequency_hz
            )));
        }
        // Occupancy 0 stands in for the temperature-dependent value, which is
        // validated per grid point during the run.
        self.transduction_params(0.0)
            .validate()
            .map_err(|e| RunnerError::config(format!("channel: {e}")))?;
        self.train
            .validate()
            .map_err(|e| RunnerError::config(format!("train: {e}")))?;
        Ok(())
    }
}

/// Read `path` (or start from defaults when `None`), apply `--set` overrides,
/// and validate.
pub fn load_config(path: Option<&Path>, sets: &[String]) -> Result<SweepConfig, RunnerError> {
    let mut table = match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| RunnerError::io(p, e))?;
            text.parse::<toml::Table>().map_err(|e| {
                RunnerError::config(format!("failed to parse {}: {e}", p.display()))
            })?
        }
        None => toml::Table::new(),
    };
    for set in sets {
        apply_set(&mut table, set)?;
    }
    let raw: RawConfig = toml::Value::Table(table)
        .try_into()
        .map_err(|e| RunnerError::config(e.to_string()))?;
    let config = raw.resolve()?;
    config.validate()?;
    Ok(config)
}

/// Insert one `key.path=value` override into the raw TOML table.
///
/// The value is parsed with TOML syntax (`0.5`, `[0.1, 0.2]`, `true`,
/// `"quoted"`); anything that does not parse is taken as a bare string, so
/// `--set train.optimizer=spsa` works without quoting.
fn apply_set(table: &mut toml::Table, set: &str) -> Result<(), RunnerError> {
    let (key, value) = set.split_once('=').ok_or_else(|| {
        RunnerError::config(format!("--set expects key.path=value, got {set:?}"))
    })?;
    let key = key.trim();
    if key.is_empty() {
        return Err(RunnerError::config(format!(
            "--set expects a non-empty key, got {set:?}"
        )));
    }
    let parsed = parse_override_value(value.trim());

    let segments: Vec<&str> = key.split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(RunnerError::config(format!(
            "--set key {key:?} has an empty path segment"
        )));
    }
    let mut current = table;
    for segment in &segments[..segments.len() - 1] {
        current = current
            .entry(segment.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| {
                RunnerError::config(format!(
                    "--set key {key:?} descends into non-table entry {segment:?}"
                ))
            })?;
    }
    current.insert(segments[segments.len() - 1].to_string(), parsed);
    Ok(())
}

fn parse_override_value(value: &str) -> toml::Value {
    // Parse through a one-line document so every TOML value form is accepted.
    match format!("v = {value}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("parsed table contains v"),
        Err(_) => toml::Value::String(value.to_string()),
    }
}

// ---------------------------------------------------------------------------
// Raw serde layer. Sections and key names mirror the TOML file format; each
// struct rejects unknown keys and fills omitted ones from the defaults.
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    sweep: RawSweep,
    channel: RawChannel,
    ansatz: RawAnsatz,
    train: RawTrain,
    codebook: RawCodebook,
    output: RawOutput,
}

impl RawConfig {
    fn resolve(self) -> Result<SweepConfig, RunnerError> {
        let optimizer = match self.train.optimizer.as_str() {
            "gradient_parameter_shift" => Optimizer::GradientParameterShift,
            "spsa" => Optimizer::Spsa,
            other => {
                return Err(RunnerError::config(format!(
                    "train.optimizer must be \"gradient_parameter_shift\" or \"spsa\", \
                     got {other:?}"
                )))
            }
        };
        Ok(SweepConfig {
            magnitudes: self.sweep.magnitudes,
            temperatures_kelvin: self.sweep.temperatures_kelvin,
            frequency_hz: self.channel.frequency_hz,
            efficiency: self.channel.efficiency,
            fock_cutoff: self.channel.fock_cutoff,
            coupling_time: self.channel.coupling_time,
            ansatz_layers: self.ansatz.layers,
            train: TrainConfig {
                restarts: self.train.restarts,
                max_outer_iters: self.train.max_outer_iters,
                optimizer,
                step_size: self.train.step_size,
                seed: self.train.seed,
                convergence_tol: self.train.convergence_tol,
                spsa: SpsaParams {
                    a: self.train.spsa.a,
                    c: self.train.spsa.c,
                    alpha: self.train.spsa.alpha,
                    gamma: self.train.spsa.gamma,
                },
            },
            codebook_source: CodebookSource::from_key(&self.codebook.source),
            output_path: self.output.path,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSweep {
    magnitudes: Vec<f64>,
    temperatures_kelvin: Vec<f64>,
}

impl Default for RawSweep {
    fn default() -> Self {
        Self {
            magnitudes: (1..=20).map(|i| f64::from(i) * 0.05).collect(),
            temperatures_kelvin: vec![0.001, 1.0],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawChannel {
    frequency_hz: f64,
    efficiency: f64,
    fock_cutoff: usize,
    coupling_time: f64,
}

impl Default for RawChannel {
    fn default() -> Self {
        Self {
            frequency_hz: 10.0e9,
            efficiency: 1.0,
            fock_cutoff: 40,
            coupling_time: FRAC_PI_2,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawAnsatz {
    layers: usize,
}

impl Default for RawAnsatz {
    fn default() -> Self {
        Self { layers: 3 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawTrain {
    restarts: usize,
    max_outer_iters: usize,
    optimizer: String,
    step_size: f64,
    seed: u64,
    convergence_tol: f64,
    spsa: RawSpsa,
}

impl Default for RawTrain {
    fn default() -> Self {
        let d = TrainConfig::default();
        Self {
            restarts: d.restarts,
            max_outer_iters: d.max_outer_iters,
            optimizer: "gradient_parameter_shift".to_string(),
            step_size: d.step_size,
            seed: d.seed,
            convergence_tol: d.convergence_tol,
            spsa: RawSpsa::default(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSpsa {
    a: f64,
    c: f64,
    alpha: f64,
    gamma: f64,
}

impl Default for RawSpsa {
    fn default() -> Self {
        let d = SpsaParams::default();
        Self {
            a: d.a,
            c: d.c,
            alpha: d.alpha,
            gamma: d.gamma,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawCodebook {
    source: String,
}

impl Default for RawCodebook {
    fn default() -> Self {
        Self {
            source: BUILTIN_PARITY_CODE.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawOutput {
    path: PathBuf,
}

impl Default for RawOutput {
    fn default() -> Self {
        Self {
            path: PathBuf::from("sweep.csv"),
        }
    }
}
