//! BPSK codebooks and joint codeword states.
//!
//! A codebook is a set of `M` equal-length phase patterns with priors; each
//! codeword becomes the tensor product of its per-pulse transduced qubit
//! states. The default is the `[3,2]` even-parity code: four codewords over
//! three pulses, pairwise Hamming distance two.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::qmath::DensityMatrix;
use crate::transduction::{
    transduce_pulse, CoherentPulse, TransductionError, TransductionParams,
};

/// Codebook construction and parsing failures.
#[derive(Debug, Error)]
pub enum CodebookError {
    /// Fewer than two codewords, or empty codewords.
    #[error("codebook must have at least 2 codewords of length ≥ 1, got {rows}×{cols}")]
    TooSmall { rows: usize, cols: usize },
    /// A codeword has the wrong number of pulses.
    #[error("codeword {index} has {got} pulses, expected {expected}")]
    RaggedRow {
        index: usize,
        expected: usize,
        got: usize,
    },
    /// Two codewords carry identical phase patterns.
    #[error("codewords {first} and {second} are identical")]
    DuplicateCodeword { first: usize, second: usize },
    /// Priors are malformed (wrong count, negative, or not normalized).
    #[error("invalid priors: {detail}")]
    BadPriors { detail: String },
    /// Codeword index outside `0..M`.
    #[error("codeword index {index} out of range for {count} codewords")]
    IndexOutOfRange { index: usize, count: usize },
    /// A codebook file line failed to parse.
    #[error("codebook line {line}: {detail}")]
    Parse { line: usize, detail: String },
    /// Channel failure while building codeword states.
    #[error(transparent)]
    Transduction(#[from] TransductionError),
}

/// `M` equal-length phase-keyed codewords with priors.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    phases: Vec<Vec<f64>>,
    priors: Vec<f64>,
}

impl Codebook {
    /// Validates and builds a codebook.
    ///
    /// Phases are normalized into `[0, 2π)`; codewords must be distinct and
    /// priors non-negative with unit sum (within `1e-12`).
    pub fn new(phases: Vec<Vec<f64>>, priors: Vec<f64>) -> Result<Self, CodebookError> {
        let rows = phases.len();
        let cols = phases.first().map_or(0, Vec::len);
        if rows < 2 || cols == 0 {
            return Err(CodebookError::TooSmall { rows, cols });
        }
        for (index, row) in phases.iter().enumerate() {
            if row.len() != cols {
                return Err(CodebookError::RaggedRow {
                    index,
                    expected: cols,
                    got: row.len(),
                });
            }
        }
        let phases: Vec<Vec<f64>> = phases
            .into_iter()
            .map(|row| row.into_iter().map(|p| p.rem_euclid(TAU)).collect())
            .collect();
        for i in 0..rows {
            for j in (i + 1)..rows {
                if phases[i] == phases[j] {
                    return Err(CodebookError::DuplicateCodeword { first: i, second: j });
                }
            }
        }
        if priors.len() != rows {
            return Err(CodebookError::BadPriors {
                detail: format!("{} priors for {rows} codewords", priors.len()),
            });
        }
        if let Some(p) = priors.iter().find(|&&p| !p.is_finite() || p < 0.0) {
            return Err(CodebookError::BadPriors {
                detail: format!("prior {p} is not a finite non-negative number"),
            });
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(CodebookError::BadPriors {
                detail: format!("priors sum to {total}, expected 1"),
            });
        }
        Ok(Self { phases, priors })
    }

    /// As [`Codebook::new`] with uniform priors `1/M`.
    pub fn with_uniform_priors(phases: Vec<Vec<f64>>) -> Result<Self, CodebookError> {
        let m = phases.len().max(1);
        Self::new(phases, vec![1.0 / m as f64; m])
    }

    /// Number of codewords `M`.
    pub fn num_codewords(&self) -> usize {
        self.phases.len()
    }

    /// Pulses per codeword `n`.
    pub fn length(&self) -> usize {
        self.phases[0].len()
    }

    /// Phase pattern of codeword `index`.
    pub fn phases(&self, index: usize) -> Result<&[f64], CodebookError> {
        self.phases
            .get(index)
            .map(Vec::as_slice)
            .ok_or(CodebookError::IndexOutOfRange {
                index,
                count: self.num_codewords(),
            })
    }

    /// Prior probabilities, in codeword order.
    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// Information content `log₂ M` in bits.
    pub fn info_bits(&self) -> f64 {
        (self.num_codewords() as f64).log2()
    }
}

/// The `[3,2]` even-parity code mapped to BPSK phases: two message bits plus
/// a parity pulse, uniform priors.
pub fn parity_code_3_2() -> Codebook {
    let phases = vec![
        vec![0.0, 0.0, 0.0],
        vec![0.0, PI, PI],
        vec![PI, 0.0, PI],
        vec![PI, PI, 0.0],
    ];
    Codebook::with_uniform_priors(phases).expect("static code is valid")
}

/// Parses the plain-text codebook format.
///
/// One codeword per line: a pattern of `+`/`-` symbols (phase 0 / π),
/// optionally followed by a prior. Blank lines and `#` comments are ignored.
/// Either every codeword carries a prior or none does (then priors are
/// uniform). Errors cite 1-based line numbers of the input text.
pub fn parse_codebook(text: &str) -> Result<Codebook, CodebookError> {
    let mut phases = Vec::new();
    let mut priors = Vec::new();
    let mut lines_used = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = offset + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let pattern = fields.next().expect("non-empty line has a first field");
        let mut row = Vec::with_capacity(pattern.len());
        for symbol in pattern.chars() {
            match symbol {
                '+' => row.push(0.0),
                '-' => row.push(PI),
                other => {
                    return Err(CodebookError::Parse {
                        line,
                        detail: format!("unexpected symbol {other:?}; use '+' or '-'"),
                    });
                }
            }
        }
        match fields.next() {
            None => priors.push(None),
            Some(field) => {
                let value: f64 = field.parse().map_err(|_| CodebookError::Parse {
                    line,
                    detail: format!("prior {field:?} is not a number"),
                })?;
                priors.push(Some(value));
                if let Some(extra) = fields.next() {
                    return Err(CodebookError::Parse {
                        line,
                        detail: format!("unexpected trailing field {extra:?}"),
                    });
                }
            }
        }
        phases.push(row);
        lines_used.push(line);
    }
    if priors.iter().any(Option::is_some) {
        if let Some(pos) = priors.iter().position(Option::is_none) {
            return Err(CodebookError::Parse {
                line: lines_used[pos],
                detail: "prior column present on other lines but missing here".into(),
            });
        }
        let priors: Vec<f64> = priors.into_iter().map(|p| p.expect("checked")).collect();
        Codebook::new(phases, priors)
    } else {
        Codebook::with_uniform_priors(phases)
    }
}

/// Joint state of codeword `index` at pulse magnitude `|α|`: the tensor
/// product of its per-pulse transduced qubit states, dimension `2ⁿ`.
pub fn codeword_state(
    codebook: &Codebook,
    index: usize,
    magnitude: f64,
    params: &TransductionParams,
) -> Result<DensityMatrix, CodebookError> {
    let pattern = codebook.phases(index)?;
    let mut state: Option<DensityMatrix> = None;
    for &phase in pattern {
        let qubit = transduce_pulse(&CoherentPulse::new(magnitude, phase)?, params)?;
        state = Some(match state {
            None => qubit,
            Some(joint) => joint.tensor(&qubit),
        });
    }
    Ok(state.expect("codewords have length ≥ 1"))
}

/// All `M` codeword states paired with their priors, in codebook order.
///
/// Pulses sharing a phase are transduced once and reused, so a BPSK code
/// costs two channel evaluations regardless of `M` and `n`.
pub fn ensemble(
    codebook: &Codebook,
    magnitude: f64,
    params: &TransductionParams,
) -> Result<Vec<(f64, DensityMatrix)>, CodebookError> {
    let mut cache: Vec<(f64, DensityMatrix)> = Vec::new();
    let mut states = Vec::with_capacity(codebook.num_codewords());
    for index in 0..codebook.num_codewords() {
        let mut joint: Option<DensityMatrix> = None;
        for &phase in codebook.phases(index)? {
            let qubit = match cache.iter().find(|(p, _)| *p == phase) {
                Some((_, q)) => q.clone(),
                None => {
                    let q = transduce_pulse(&CoherentPulse::new(magnitude, phase)?, params)?;
                    cache.push((phase, q.clone()));
                    q
                }
            };
            joint = Some(match joint {
                None => qubit,
                Some(j) => j.tensor(&qubit),
            });
        }
        states.push((
            codebook.priors()[index],
            joint.expect("codewords have length ≥ 1"),
        ));
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{partial_trace, C64, ComplexMatrix};

    fn hamming(a: &[f64], b: &[f64]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }

    /// Permutation matrix sending qubit slot `i` to `perm[i]` on n qubits.
    fn qubit_permutation(perm: &[usize]) -> ComplexMatrix {
        let n = perm.len();
        let dim = 1 << n;
        let mut p = ComplexMatrix::zeros(dim, dim);
        for src in 0..dim {
            let mut dst = 0usize;
            for (i, &target) in perm.iter().enumerate() {
                let bit = (src >> (n - 1 - i)) & 1;
                dst |= bit << (n - 1 - target);
            }
            p.set(dst, src, C64::new(1.0, 0.0));
        }
        p
    }

    #[test]
    fn parity_code_shape_and_distance() {
        let code = parity_code_3_2();
        assert_eq!(code.num_codewords(), 4);
        assert_eq!(code.length(), 3);
        assert!(code.priors().iter().all(|&p| (p - 0.25).abs() < 1e-15));
        assert_eq!(code.phases(0).unwrap(), &[0.0, 0.0, 0.0]);
        assert!((code.info_bits() - 2.0).abs() < 1e-15);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let d = hamming(code.phases(i).unwrap(), code.phases(j).unwrap());
                assert_eq!(d, 2, "codewords {i},{j}");
            }
        }
    }

    #[test]
    fn constructor_rejects_malformed_codebooks() {
        assert!(matches!(
            Codebook::with_uniform_priors(vec![vec![0.0, PI]]),
            Err(CodebookError::TooSmall { .. })
        ));
        assert!(matches!(
            Codebook::with_uniform_priors(vec![vec![0.0, PI], vec![0.0]]),
            Err(CodebookError::RaggedRow { .. })
        ));
        // TAU-shifted phases normalize onto each other, so these collide.
        assert!(matches!(
            Codebook::with_uniform_priors(vec![vec![0.0, PI], vec![TAU, PI]]),
            Err(CodebookError::DuplicateCodeword { first: 0, second: 1 })
        ));
        let rows = vec![vec![0.0], vec![PI]];
        assert!(matches!(
            Codebook::new(rows.clone(), vec![0.5]),
            Err(CodebookError::BadPriors { .. })
        ));
        assert!(matches!(
            Codebook::new(rows.clone(), vec![1.2, -0.2]),
            Err(CodebookError::BadPriors { .. })
        ));
        assert!(matches!(
            Codebook::new(rows, vec![0.6, 0.5]),
            Err(CodebookError::BadPriors { .. })
        ));
    }

    #[test]
    fn parses_patterns_with_comments_and_priors() {
        let code = parse_codebook("# parity code\n+++\n+--\n\n-+- # third\n--+\n").unwrap();
        assert_eq!(code, parity_code_3_2());

        let weighted = parse_codebook("++ 0.75\n-- 0.25\n").unwrap();
        assert_eq!(weighted.priors(), &[0.75, 0.25]);
        assert_eq!(weighted.phases(1).unwrap(), &[PI, PI]);
    }

    #[test]
    fn parse_errors_cite_line_numbers() {
        match parse_codebook("+++\n+x+\n") {
            Err(CodebookError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_codebook("++ 0.5\n-- nope\n") {
            Err(CodebookError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_codebook("# header\n++ 0.5\n--\n") {
            Err(CodebookError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_codebook("++ 0.5 extra\n--\n") {
            Err(CodebookError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_codebook("# nothing\n"),
            Err(CodebookError::TooSmall { .. })
        ));
    }

    #[test]
    fn codeword_state_dimension_and_trace() {
        let code = parity_code_3_2();
        let params = TransductionParams::default();
        let rho = codeword_state(&code, 1, 0.5, &params).unwrap();
        assert_eq!(rho.dim(), 8);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-8);
        assert!(matches!(
            codeword_state(&code, 4, 0.5, &params),
            Err(CodebookError::IndexOutOfRange { index: 4, count: 4 })
        ));
    }

    #[test]
    fn vacuum_codewords_are_all_ground() {
        let code = parity_code_3_2();
        let params = TransductionParams::default();
        let mut ggg = ComplexMatrix::zeros(8, 8);
        ggg.set(0, 0, C64::new(1.0, 0.0));
        for index in 0..4 {
            let rho = codeword_state(&code, index, 0.0, &params).unwrap();
            assert!(rho.matrix().max_abs_diff(&ggg) < 1e-10);
        }
    }

    #[test]
    fn repeated_phase_codeword_is_permutation_symmetric() {
        let code = parity_code_3_2();
        let params = TransductionParams {
            thermal_occupancy: 0.4,
            ..TransductionParams::default()
        };
        let rho = codeword_state(&code, 0, 0.6, &params).unwrap();
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0]] {
            let p = qubit_permutation(&perm);
            let permuted = &(&p * rho.matrix()) * &p.adjoint();
            assert!(permuted.max_abs_diff(rho.matrix()) < 1e-10, "perm {perm:?}");
        }
    }

    #[test]
    fn codeword_states_factorize_per_slot() {
        let code = parity_code_3_2();
        let params = TransductionParams {
            thermal_occupancy: 0.2,
            ..TransductionParams::default()
        };
        for index in 0..4 {
            let joint = codeword_state(&code, index, 0.45, &params).unwrap();
            for slot in 0..3 {
                let marginal = partial_trace(&joint, &[2, 2, 2], &[slot]).unwrap();
                let phase = code.phases(index).unwrap()[slot];
                let single =
                    transduce_pulse(&CoherentPulse::new(0.45, phase).unwrap(), &params).unwrap();
                assert!(marginal.matrix().max_abs_diff(single.matrix()) < 1e-10);
            }
        }
    }

    #[test]
    fn permuting_pulse_positions_permutes_factors() {
        let code = parity_code_3_2();
        // Rotate every codeword's pulse positions left by one.
        let rotated: Vec<Vec<f64>> = (0..4)
            .map(|i| {
                let row = code.phases(i).unwrap();
                vec![row[1], row[2], row[0]]
            })
            .collect();
        let rotated = Codebook::with_uniform_priors(rotated).unwrap();
        let params = TransductionParams::default();
        for index in 0..4 {
            let original = codeword_state(&code, index, 0.5, &params).unwrap();
            let shifted = codeword_state(&rotated, index, 0.5, &params).unwrap();
            for slot in 0..3 {
                let a = partial_trace(&shifted, &[2, 2, 2], &[slot]).unwrap();
                let b = partial_trace(&original, &[2, 2, 2], &[(slot + 1) % 3]).unwrap();
                assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-10);
            }
        }
    }

    #[test]
    fn ensemble_echoes_priors_and_equalizes_purity() {
        let code = parity_code_3_2();
        let params = TransductionParams::default();
        let members = ensemble(&code, 0.5, &params).unwrap();
        assert_eq!(members.len(), 4);
        for (m, (prior, rho)) in members.iter().enumerate() {
            assert_eq!(*prior, 0.25);
            let direct = codeword_state(&code, m, 0.5, &params).unwrap();
            assert!(rho.matrix().max_abs_diff(direct.matrix()) < 1e-12);
        }
        // At n̄ = 0 the codeword states are local phase rotations of one
        // another, so purity is codeword-independent.
        let purities: Vec<f64> = members.iter().map(|(_, rho)| rho.purity()).collect();
        for p in &purities[1..] {
            assert!((p - purities[0]).abs() < 1e-9, "purities {purities:?}");
        }
    }
}
