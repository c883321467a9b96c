//! Bloch-sphere picture of the pulse → qubit transduction channel.
//!
//! A BPSK pulse displaces a thermal cavity field, a resonant Jaynes–Cummings
//! half-period swaps the field onto the qubit, and the field is traced out.
//! Two things are worth seeing directly:
//!
//! 1. the pulse phase survives as the qubit's azimuth (rotated by −π/2), so
//!    the code geometry is preserved, and
//! 2. thermal occupancy shrinks the transverse (information-bearing) Bloch
//!    component — the hot channel dephases the qubit.

use jdr_sim::transduction::{
    bloch_vector, nbar_from_temperature, transduce_pulse, CoherentPulse, TransductionParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let frequency_hz = 10.0e9;

    println!("phase tracking at |α| = 0.5, T = 1 mK:");
    println!("{:>8}  {:>9}  {:>9}  {:>9}  {:>9}", "θ", "x", "y", "z", "azimuth");
    let cold = TransductionParams {
        thermal_occupancy: nbar_from_temperature(0.001, frequency_hz)?,
        ..TransductionParams::default()
    };
    for k in 0..4 {
        let theta = f64::from(k) * std::f64::consts::FRAC_PI_2;
        let qubit = transduce_pulse(&CoherentPulse::new(0.5, theta)?, &cold)?;
        let (x, y, z) = bloch_vector(&qubit)?;
        let azimuth = y.atan2(x);
        println!("{theta:>8.4}  {x:>9.5}  {y:>9.5}  {z:>9.5}  {azimuth:>9.5}");
        // The channel maps pulse phase θ to qubit azimuth θ − π/2.
        let expected = theta - std::f64::consts::FRAC_PI_2;
        let wrapped = (azimuth - expected).sin().abs();
        assert!(wrapped < 1e-9, "azimuth should track the pulse phase");
    }

    println!("\ndephasing with temperature at |α| = 0.5, θ = 0:");
    println!("{:>8}  {:>12}  {:>12}  {:>9}", "T (K)", "n̄", "transverse", "purity");
    for temperature in [0.001, 0.1, 0.3, 1.0] {
        let nbar = nbar_from_temperature(temperature, frequency_hz)?;
        let params = TransductionParams {
            thermal_occupancy: nbar,
            ..TransductionParams::default()
        };
        let qubit = transduce_pulse(&CoherentPulse::new(0.5, 0.0)?, &params)?;
        let (x, y, z) = bloch_vector(&qubit)?;
        let transverse = x.hypot(y);
        let purity = (1.0 + x * x + y * y + z * z) / 2.0;
        println!("{temperature:>8.3}  {nbar:>12.5e}  {transverse:>12.8}  {purity:>9.6}");
    }
    println!("\nshorter transverse component ⇒ harder to distinguish 0 from π");
    Ok(())
}
