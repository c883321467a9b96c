//! `jdr` — joint-detection receiver workbench CLI.
//!
//! A thin front end over [`jdr_sim::runner`]: every subcommand reads the
//! same configuration (defaults → `--config` file → `--set` overrides) and
//! drives one stage of the pipeline. Exit codes: 0 success, 1 usage or
//! configuration error, 2 numerical failure, 3 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use jdr_sim::codebook::ensemble;
use jdr_sim::discrimination::{
    classical_codeword_baseline, helstrom_bpsk_optical, optimal_povm_default, povm_error_prob,
    pretty_good_measurement,
};
use jdr_sim::runner::{
    emit_csv, emit_plot, load_config, parse_csv, run_sweep, RunnerError, SweepConfig,
};
use jdr_sim::transduction::{bloch_vector, nbar_from_temperature, transduce_pulse, CoherentPulse};
use jdr_sim::vqc::{train, AnsatzSpec};

#[derive(Parser)]
#[command(
    name = "jdr",
    about = "Joint-detection receiver workbench: BPSK codewords on a lossy \
             thermal qubit channel",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file (defaults reproduce the headline experiment).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file; defaults to stdout (or the configured path for `sweep`).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set channel.efficiency=0.9`.
    /// Repeatable; applied after the file, so overrides win.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Override the training seed from the configuration.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,
    /// Worker threads for the sweep; 0 picks the machine's core count.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form heterodyne baselines over the magnitude grid.
    Baseline,
    /// Bloch-sphere diagnostics of the single-pulse transduction channel.
    Transduce,
    /// Exact discrimination bounds (PGM and optimal POVM), no training.
    Optimal,
    /// Train the variational decoder at the first grid point, verbosely.
    Train,
    /// Run the full (temperature × magnitude) sweep and write the CSV.
    Sweep,
    /// Render a sweep CSV to a self-contained SVG.
    Plot {
        /// Sweep CSV produced by `jdr sweep`.
        input: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are successful terminations; anything else is
            // a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        if let RunnerError::SweepFailures { failures, .. } = &err {
            for failure in failures {
                eprintln!("  {failure}");
            }
        }
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), RunnerError> {
    let mut config = load_config(cli.config.as_deref(), &cli.set)?;
    if let Some(seed) = cli.seed {
        config.train.seed = seed;
    }
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| RunnerError::config(format!("--jobs: {e}")))?;
    }

    match cli.command {
        Command::Baseline => baseline(&config, cli.out.as_deref()),
        Command::Transduce => transduce(&config, cli.out.as_deref()),
        Command::Optimal => optimal(&config, cli.out.as_deref()),
        Command::Train => train_point(&config, cli.out.as_deref()),
        Command::Sweep => sweep(&config, cli.out.as_deref()),
        Command::Plot { input } => plot(&config, &input, cli.out.as_deref()),
    }
}

/// Write `text` to `out`, or print it when no path was given.
fn deliver(out: Option<&Path>, text: &str) -> Result<(), RunnerError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| RunnerError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn baseline(config: &SweepConfig, out: Option<&Path>) -> Result<(), RunnerError> {
    let codebook = config.load_codebook()?;
    let info_pulses = (codebook.info_bits().ceil() as u32).max(1);
    let mut text = String::from("magnitude,alpha_sq,p_err_single_pulse,p_err_codeword\n");
    let mut magnitudes = config.magnitudes.clone();
    magnitudes.sort_by(f64::total_cmp);
    for &m in &magnitudes {
        let single = helstrom_bpsk_optical(m);
        let codeword = classical_codeword_baseline(m, info_pulses);
        writeln!(text, "{m:.11e},{:.11e},{single:.11e},{codeword:.11e}", m * m)
            .expect("string writes cannot fail");
    }
    deliver(out, &text)
}

fn transduce(config: &SweepConfig, out: Option<&Path>) -> Result<(), RunnerError> {
    let mut text = String::from(
        "temperature_kelvin,magnitude,nbar,bloch_x,bloch_y,bloch_z,azimuth,transverse,purity\n",
    );
    let mut temperatures = config.temperatures_kelvin.clone();
    temperatures.sort_by(f64::total_cmp);
    let mut magnitudes = config.magnitudes.clone();
    magnitudes.sort_by(f64::total_cmp);
    for &t in &temperatures {
        let nbar = nbar_from_temperature(t, config.frequency_hz).map_err(RunnerError::numerical)?;
        let params = config.transduction_params(nbar);
        for &m in &magnitudes {
            let pulse = CoherentPulse::new(m, 0.0).map_err(RunnerError::numerical)?;
            let qubit = transduce_pulse(&pulse, &params).map_err(RunnerError::numerical)?;
            let (x, y, z) = bloch_vector(&qubit).map_err(RunnerError::numerical)?;
            let azimuth = y.atan2(x);
            let transverse = x.hypot(y);
            let purity = (1.0 + x * x + y * y + z * z) / 2.0;
            writeln!(
                text,
                "{t:.11e},{m:.11e},{nbar:.11e},{x:.11e},{y:.11e},{z:.11e},\
                 {azimuth:.11e},{transverse:.11e},{purity:.11e}"
            )
            .expect("string writes cannot fail");
        }
    }
    deliver(out, &text)
}

fn optimal(config: &SweepConfig, out: Option<&Path>) -> Result<(), RunnerError> {
    let codebook = config.load_codebook()?;
    let info_pulses = (codebook.info_bits().ceil() as u32).max(1);
    let mut text = String::from(
        "temperature_kelvin,magnitude,nbar,p_err_classical,p_err_pgm,p_err_optimal,\
         ykl_residual,iterations,converged\n",
    );
    let mut temperatures = config.temperatures_kelvin.clone();
    temperatures.sort_by(f64::total_cmp);
    let mut magnitudes = config.magnitudes.clone();
    magnitudes.sort_by(f64::total_cmp);
    for &t in &temperatures {
        let nbar = nbar_from_temperature(t, config.frequency_hz).map_err(RunnerError::numerical)?;
        let params = config.transduction_params(nbar);
        for &m in &magnitudes {
            let states = ensemble(&codebook, m, &params).map_err(RunnerError::numerical)?;
            let classical = classical_codeword_baseline(m, info_pulses);
            let pgm = pretty_good_measurement(&states).map_err(RunnerError::numerical)?;
            let p_pgm = povm_error_prob(&states, &pgm).map_err(RunnerError::numerical)?;
            let result = optimal_povm_default(&states).map_err(RunnerError::numerical)?;
            writeln!(
                text,
                "{t:.11e},{m:.11e},{nbar:.11e},{classical:.11e},{p_pgm:.11e},\
                 {:.11e},{:.11e},{},{}",
                result.p_err, result.ykl_residual, result.iterations, result.converged
            )
            .expect("string writes cannot fail");
        }
    }
    deliver(out, &text)
}

fn train_point(config: &SweepConfig, out: Option<&Path>) -> Result<(), RunnerError> {
    let codebook = config.load_codebook()?;
    let info_pulses = (codebook.info_bits().ceil() as u32).max(1);
    // Verbose single-point mode: the smallest magnitude and temperature of
    // the grids. Narrow the grids (--set sweep.magnitudes=[0.5]) to pick a
    // different point.
    let magnitude = config
        .magnitudes
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .expect("validated non-empty");
    let temperature = config
        .temperatures_kelvin
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .expect("validated non-empty");
    let nbar =
        nbar_from_temperature(temperature, config.frequency_hz).map_err(RunnerError::numerical)?;
    let params = config.transduction_params(nbar);
    let states = ensemble(&codebook, magnitude, &params).map_err(RunnerError::numerical)?;
    let ansatz = AnsatzSpec::new(codebook.length(), config.ansatz_layers)
        .map_err(|e| RunnerError::config(e.to_string()))?;

    eprintln!(
        "training at |alpha| = {magnitude}, T = {temperature} K (nbar = {nbar:.6e}), \
         {} codewords over {} pulses, {} parameters, seed {}",
        codebook.num_codewords(),
        codebook.length(),
        ansatz.parameter_count(),
        config.train.seed
    );
    let classical = classical_codeword_baseline(magnitude, info_pulses);
    let bound = optimal_povm_default(&states).map_err(RunnerError::numerical)?;
    eprintln!(
        "classical baseline {classical:.6}, optimal POVM {:.6} (ykl residual {:.3e})",
        bound.p_err, bound.ykl_residual
    );

    let result = train(&ansatz, &states, &config.train).map_err(RunnerError::numerical)?;
    let mut text = String::from("outer_iteration,best_p_err\n");
    for &(iteration, p_err) in &result.trajectory {
        writeln!(text, "{iteration},{p_err:.11e}").expect("string writes cannot fail");
    }
    deliver(out, &text)?;
    eprintln!(
        "trained p_err {:.6} (restart {}, {} total iterations); gap to optimal {:+.6}",
        result.p_err,
        result.best_restart,
        result.total_outer_iterations,
        result.p_err - bound.p_err
    );
    eprintln!("outcome assignment: {:?}", result.assignment);
    Ok(())
}

fn sweep(config: &SweepConfig, out: Option<&Path>) -> Result<(), RunnerError> {
    let rows = run_sweep(config)?;
    let path = out.unwrap_or(&config.output_path);
    emit_csv(&rows, path)?;
    eprintln!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn plot(config: &SweepConfig, input: &Path, out: Option<&Path>) -> Result<(), RunnerError> {
    let text = fs::read_to_string(input).map_err(|e| RunnerError::io(input, e))?;
    let rows = parse_csv(&text)?;
    let default_path = input.with_extension("svg");
    let path = out.unwrap_or(&default_path);
    emit_plot(&rows, &config.temperatures_kelvin, path)?;
    eprintln!("wrote plot to {}", path.display());
    Ok(())
}
