//! Joint-detection receiver workbench for BPSK codewords on a lossy thermal
//! qubit channel.
//!
//! A sequence of weak coherent pulses carries one codeword of a binary
//! phase-shift-keyed code. Each pulse is transduced onto a qubit by a
//! resonant Jaynes–Cummings interaction with a displaced thermal cavity
//! field, so the receiver ends up holding one mixed qubit per pulse. This
//! crate answers three questions about that register:
//!
//! 1. **How well could any measurement do?** [`discrimination`] computes the
//!    exact minimum-error measurement for the codeword ensemble via a
//!    fixed-point iteration seeded with the pretty good measurement, plus a
//!    certificate (`ykl_residual`) that the optimum was actually reached.
//! 2. **How well does the conventional receiver do?** The same module gives
//!    the closed-form error of pulse-by-pulse heterodyne detection, the
//!    classical baseline the joint receiver must beat.
//! 3. **How close does a small circuit get?** [`vqc`] trains a
//!    hardware-efficient variational circuit followed by a computational
//!    basis readout to decode the codeword jointly, using exact gradients
//!    (parameter shift) or SPSA.
//!
//! The [`runner`] module sweeps all of the above over a (|α|, temperature)
//! grid and emits CSV and SVG; the `jdr` binary is a thin CLI over it.
//!
//! # Modules
//!
//! - [`qmath`] — dense complex matrices, Hermitian eigendecomposition,
//!   validated density matrices, partial trace.
//! - [`transduction`] — thermal occupancy, displacement, Jaynes–Cummings
//!   transfer, the pulse → qubit channel.
//! - [`codebook`] — BPSK phase patterns, the built-in [3, 2] parity code,
//!   codeword product states.
//! - [`discrimination`] — Helstrom bound, pretty good measurement, optimal
//!   POVM iteration with optimality certificate, classical baseline.
//! - [`vqc`] — ansatz, measurement statistics, maximum-likelihood outcome
//!   assignment, parameter-shift gradients, multi-restart training.
//! - [`runner`] — configuration, the sweep grid, CSV and SVG output.
//!
//! # Examples
//!
//! Each major capability has a runnable example (`cargo run --release
//! --example <name>`):
//!
//! - `helstrom_baseline` — closed-form single-pulse and codeword baselines.
//! - `transduce_pulse` — Bloch-sphere picture of the transduction channel.
//! - `discrimination_bounds` — PGM vs optimal POVM on the parity code.
//! - `train_receiver` — train the variational decoder at one grid point.
//! - `custom_codebook` — parse a codebook file and bound its performance.
//! - `full_sweep` — the complete experiment grid, written to CSV and SVG.
//!
//! The snippet below bounds the parity code at |α| = 0.4 on a cold channel:
//!
//! ```
//! use jdr_sim::codebook::{ensemble, parity_code_3_2};
//! use jdr_sim::discrimination::{classical_codeword_baseline, optimal_povm_default};
//! use jdr_sim::transduction::TransductionParams;
//!
//! let params = TransductionParams {
//!     efficiency: 1.0,
//!     thermal_occupancy: 0.0,
//!     fock_cutoff: 20,
//!     coupling_time: std::f64::consts::FRAC_PI_2,
//! };
//! let states = ensemble(&parity_code_3_2(), 0.4, &params)?;
//! let optimal = optimal_povm_default(&states)?;
//! let classical = classical_codeword_baseline(0.4, 2);
//! assert!(optimal.p_err < classical);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod codebook;
pub mod discrimination;
pub mod qmath;
pub mod runner;
pub mod transduction;
pub mod vqc;
