//! Train the variational joint receiver on one grid point and compare it to
//! the exact bounds.

use jdr_sim::codebook::{ensemble, parity_code_3_2};
use jdr_sim::discrimination::{
    classical_codeword_baseline, optimal_povm_default, povm_error_prob, pretty_good_measurement,
};
use jdr_sim::transduction::TransductionParams;
use jdr_sim::vqc::{train, AnsatzSpec, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let magnitude = 0.5;
    let code = parity_code_3_2();
    let params = TransductionParams::default();
    let states = ensemble(&code, magnitude, &params)?;

    let classical = classical_codeword_baseline(magnitude, 2);
    let optimal = optimal_povm_default(&states)?;
    let pgm = povm_error_prob(&states, &pretty_good_measurement(&states)?)?;

    let spec = AnsatzSpec::new(3, 3)?;
    let config = TrainConfig::default();
    println!(
        "training {} parameters, {} restarts, ≤{} outer iterations…",
        spec.parameter_count(),
        config.restarts,
        config.max_outer_iters
    );
    let start = std::time::Instant::now();
    let result = train(&spec, &states, &config)?;
    let elapsed = start.elapsed();

    println!("|α| = {magnitude}, n̄ = {}", params.thermal_occupancy);
    println!("  classical 2-pulse baseline: {classical:.6}");
    println!("  pretty-good measurement:    {pgm:.6}");
    println!(
        "  optimal POVM:               {:.6}  (YKL residual {:.2e}, {} iterations)",
        optimal.p_err, optimal.ykl_residual, optimal.iterations
    );
    println!(
        "  trained circuit:            {:.6}  (restart {}, {} outer iterations, {:.1?})",
        result.p_err, result.best_restart, result.total_outer_iterations, elapsed
    );
    println!(
        "  gap to optimal:             {:+.6}",
        result.p_err - optimal.p_err
    );
    Ok(())
}
