//! The executable search circuits.
//!
//! Three circuit families share the statevector core:
//!
//! - [`younes_once`] — prepare n+1 qubits, superpose the search register,
//!   one bit-oracle call into the workspace qubit, Hadamard on the
//!   workspace, then one mean inversion over all n+1 qubits. Constant
//!   oracle cost; strongest when matches are plentiful.
//! - [`younes_iterated`] — the same step repeated with a fresh workspace
//!   qubit per iteration, the mean inversion always covering the whole
//!   register grown so far.
//! - [`grover`] — standard amplitude amplification on the bare n-qubit
//!   register: phase oracle then mean inversion, q times.
//!
//! The workspace qubits are never measured; success probabilities are
//! marginals over the first n qubits, which is how a marked index collects
//! the mass of both its workspace branches.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle::CountingOracle;
use crate::state::{max_qubits, StateVector};

/// Which circuit family produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    YounesOnce,
    YounesIterated,
    Grover,
    HybridFallback,
}

impl Branch {
    /// Stable wire label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Branch::YounesOnce => "younes-once",
            Branch::YounesIterated => "younes-iterated",
            Branch::Grover => "grover",
            Branch::HybridFallback => "hybrid-fallback",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A circuit that has been run up to (but not including) measurement.
#[derive(Clone, Debug)]
pub struct PreparedSearchState {
    pub state: StateVector,
    /// Search-register width in qubits.
    pub n: u32,
    /// Iterations performed; the register holds `n + q_applied` qubits for
    /// the iterated algorithm, `n + 1` for the one-shot circuit, `n` for
    /// Grover.
    pub q_applied: u32,
    pub oracle: CountingOracle,
    pub branch: Branch,
}

impl PreparedSearchState {
    /// Measurement distribution over the search register.
    pub fn marginal(&self) -> Vec<f64> {
        self.state
            .marginal_probabilities(self.n)
            .expect("search register fits the prepared state")
    }

    /// Probability that measuring the first n qubits lands on a marked
    /// index: the marked entries of the marginal, summed.
    pub fn success_probability(&self) -> f64 {
        let marginal = self.marginal();
        self.oracle
            .spec()
            .marked()
            .iter()
            .map(|&i| marginal[i])
            .sum()
    }
}

/// Outcome of one sampled search.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub found_index: usize,
    pub is_solution: bool,
    /// Superposed oracle applications charged to this run.
    pub oracle_calls: u64,
    /// Classical f evaluations spent verifying measured candidates.
    pub classical_evals: u64,
    pub branch: Branch,
    /// Circuit depth of the preparation that produced `found_index`.
    pub q_used: u32,
    /// Identifier of the random stream that drove this run.
    pub seed: u64,
}

/// Mean inversion over the first `over_first_m` qubits: every targeted
/// amplitude moves to 2⟨α⟩ − α.
///
/// Implemented as a two-pass sweep, no matrix. When `over_first_m` is less
/// than the register width the inversion acts blockwise per trailing-qubit
/// pattern, which is the tensor extension of the operator; the search
/// circuits always invert over the whole current register.
pub fn diffusion(state: &mut StateVector, over_first_m: u32) -> Result<()> {
    let width = state.num_qubits();
    if over_first_m == 0 || over_first_m > width {
        return Err(Error::InvalidArgument(format!(
            "mean inversion over {over_first_m} qubits does not fit a {width}-qubit register"
        )));
    }
    let trailing = 1usize << (width - over_first_m);
    let rows = 1usize << over_first_m;
    let amps = state.amplitudes_mut();
    for w in 0..trailing {
        let mut sum = Complex64::new(0.0, 0.0);
        for r in 0..rows {
            sum += amps[r * trailing + w];
        }
        let twice_mean = sum * (2.0 / rows as f64);
        for r in 0..rows {
            let k = r * trailing + w;
            amps[k] = twice_mean - amps[k];
        }
    }
    state.debug_check_norm();
    Ok(())
}

/// Dense matrix of the mean inversion on m qubits: 2/2^m everywhere, minus
/// the identity. Kept for cross-validating [`diffusion`] at small sizes via
/// [`StateVector::apply_unitary_dense`].
pub fn diffusion_matrix(m: u32) -> Vec<Complex64> {
    let dim = 1usize << m;
    let off = 2.0 / dim as f64;
    (0..dim * dim)
        .map(|k| {
            let diag = k % (dim + 1) == 0;
            Complex64::new(if diag { off - 1.0 } else { off }, 0.0)
        })
        .collect()
}

/// One-shot multi-match search: n+1 qubits, one oracle call, one mean
/// inversion over the whole register.
pub fn younes_once(mut oracle: CountingOracle) -> Result<PreparedSearchState> {
    let n = oracle.spec().n();
    let mut state = StateVector::new_zero(n + 1)?;
    state.apply_hadamard_range(0..n)?;
    oracle.apply_bit_oracle(&mut state, n)?;
    state.apply_hadamard(n)?;
    diffusion(&mut state, n + 1)?;
    Ok(PreparedSearchState {
        state,
        n,
        q_applied: 1,
        oracle,
        branch: Branch::YounesOnce,
    })
}

/// Iterated multi-match search: per iteration k, append a fresh workspace
/// qubit (the new least significant bit), bit-oracle into it, Hadamard it,
/// then invert about the mean over all n + k qubits.
///
/// Uses exactly `q` oracle calls and ends with an (n + q)-qubit register.
/// Untouched workspace qubits would stay |0⟩, so growing the register one
/// qubit at a time is interchangeable with allocating all n + q upfront.
pub fn younes_iterated(mut oracle: CountingOracle, q: u32) -> Result<PreparedSearchState> {
    let n = oracle.spec().n();
    if q == 0 {
        return Err(Error::InvalidArgument(
            "the iterated search needs at least one iteration".into(),
        ));
    }
    let limit = max_qubits();
    if n + q > limit {
        return Err(Error::CapacityExceeded {
            requested: n + q,
            limit,
        });
    }
    let mut state = StateVector::new_zero(n)?;
    state.apply_hadamard_range(0..n)?;
    for k in 1..=q {
        state.push_workspace_qubit()?;
        let target = n + k - 1;
        oracle.apply_bit_oracle(&mut state, target)?;
        state.apply_hadamard(target)?;
        diffusion(&mut state, n + k)?;
    }
    Ok(PreparedSearchState {
        state,
        n,
        q_applied: q,
        oracle,
        branch: Branch::YounesIterated,
    })
}

/// Grover's search: uniform superposition on n qubits, then q rounds of
/// phase oracle plus mean inversion. q = 0 leaves the uniform state.
pub fn grover(mut oracle: CountingOracle, q: u32) -> Result<PreparedSearchState> {
    let n = oracle.spec().n();
    let mut state = StateVector::new_zero(n)?;
    state.apply_hadamard_range(0..n)?;
    for _ in 0..q {
        oracle.apply_phase_oracle(&mut state)?;
        diffusion(&mut state, n)?;
    }
    Ok(PreparedSearchState {
        state,
        n,
        q_applied: q,
        oracle,
        branch: Branch::Grover,
    })
}

/// Measure the search register of a prepared circuit, classically verify
/// the candidate, and snapshot the query accounting.
pub fn run_and_verify(
    prepared: &mut PreparedSearchState,
    rng: &mut impl Rng,
    seed: u64,
) -> Result<RunResult> {
    let mut collapsed = prepared.state.clone();
    let found_index = collapsed.measure_first_n(prepared.n, rng)?;
    let is_solution = prepared.oracle.verify(found_index)?;
    Ok(RunResult {
        found_index,
        is_solution,
        oracle_calls: prepared.oracle.calls(),
        classical_evals: prepared.oracle.classical_evals(),
        branch: prepared.branch,
        q_used: prepared.q_applied,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form;
    use crate::oracle::OracleSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn counting(n: u32, marked: Vec<usize>) -> CountingOracle {
        CountingOracle::new(OracleSpec::new(n, marked).unwrap())
    }

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (tol {tol})"
        );
    }

    #[test]
    fn diffusion_fixes_the_uniform_state() {
        let mut state = StateVector::new_zero(3).unwrap();
        state.apply_hadamard_range(0..3).unwrap();
        let before: Vec<Complex64> = state.amplitudes().to_vec();
        diffusion(&mut state, 3).unwrap();
        for (a, b) in state.amplitudes().iter().zip(&before) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn diffusion_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut raw: Vec<Complex64> = (0..16)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            raw.iter_mut().for_each(|a| *a /= norm);
            let mut state = StateVector::from_amplitudes(4, raw.clone()).unwrap();
            diffusion(&mut state, 4).unwrap();
            diffusion(&mut state, 4).unwrap();
            for (a, b) in state.amplitudes().iter().zip(&raw) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn diffusion_turns_the_post_oracle_state_into_two_amplitude_levels() {
        // n = 2 with both matches in {0, 1}: after the oracle and workspace
        // Hadamard the marked/workspace-1 states sit at −1/√8, everything
        // else at +1/√8. The inversion sends them to 2/√8 and 0.
        let s = 1.0 / 8f64.sqrt();
        let mut amps = vec![Complex64::new(s, 0.0); 8];
        amps[1] = Complex64::new(-s, 0.0);
        amps[3] = Complex64::new(-s, 0.0);
        let mut state = StateVector::from_amplitudes(3, amps).unwrap();
        diffusion(&mut state, 3).unwrap();
        for (k, a) in state.amplitudes().iter().enumerate() {
            let expected = if k == 1 || k == 3 { 2.0 * s } else { 0.0 };
            assert_close(a.re, expected, 1e-12);
        }
    }

    #[test]
    fn diffusion_agrees_with_its_dense_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in 1..=4u32 {
            let width = m + 1;
            let dim = 1usize << width;
            let mut raw: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            raw.iter_mut().for_each(|a| *a /= norm);

            let mut fast = StateVector::from_amplitudes(width, raw.clone()).unwrap();
            diffusion(&mut fast, m).unwrap();
            let mut dense = StateVector::from_amplitudes(width, raw).unwrap();
            let qubits: Vec<u32> = (0..m).collect();
            dense
                .apply_unitary_dense(&diffusion_matrix(m), &qubits)
                .unwrap();
            for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn diffusion_rejects_oversized_spans() {
        let mut state = StateVector::new_zero(2).unwrap();
        assert!(diffusion(&mut state, 3).is_err());
        assert!(diffusion(&mut state, 0).is_err());
    }

    #[test]
    fn younes_once_reproduces_the_single_match_table() {
        let prepared = younes_once(counting(2, vec![1])).unwrap();
        assert_close(prepared.success_probability(), 0.8125, 1e-12);
        let prepared = younes_once(counting(3, vec![5])).unwrap();
        assert_close(prepared.success_probability(), 0.5078125, 1e-12);
        assert_eq!(prepared.state.num_qubits(), 4);
        assert_eq!(prepared.oracle.calls(), 1);
        assert_eq!(prepared.q_applied, 1);
    }

    #[test]
    fn younes_once_is_certain_at_half_the_space() {
        for n in 1..=5u32 {
            let size = 1usize << n;
            let marked: Vec<usize> = (0..size / 2).map(|i| 2 * i).collect();
            let prepared = younes_once(counting(n, marked)).unwrap();
            assert_close(prepared.success_probability(), 1.0, 1e-12);
        }
    }

    #[test]
    fn younes_once_handles_the_empty_oracle() {
        let prepared = younes_once(counting(3, vec![])).unwrap();
        assert_close(prepared.success_probability(), 0.0, 1e-15);
        // The uniform state is untouched by the inversion.
        let expect = 1.0 / 16f64.sqrt();
        for a in prepared.state.amplitudes() {
            assert_close(a.re, expect, 1e-12);
        }
    }

    #[test]
    fn iterated_at_depth_one_equals_the_one_shot_circuit() {
        for (n, marked) in [(2u32, vec![1usize]), (3, vec![0, 5]), (4, vec![2, 3, 9])] {
            let once = younes_once(counting(n, marked.clone())).unwrap();
            let iter = younes_iterated(counting(n, marked), 1).unwrap();
            assert_eq!(once.state.num_qubits(), iter.state.num_qubits());
            for (a, b) in once.state.amplitudes().iter().zip(iter.state.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn iterated_depth_two_matches_the_closed_form_value() {
        let prepared = younes_iterated(counting(4, vec![7]), 2).unwrap();
        assert_close(prepared.success_probability(), 0.4504547119140625, 1e-9);
        assert_eq!(prepared.oracle.calls(), 2);
        assert_eq!(prepared.state.num_qubits(), 6);
    }

    #[test]
    fn iterated_depth_two_stays_reliable_for_heavy_matching() {
        // More than half the space marked: at least 0.959 after two rounds.
        for m in 9..=16usize {
            let prepared = younes_iterated(counting(4, (0..m).collect()), 2).unwrap();
            assert!(
                prepared.success_probability() >= 0.959,
                "M = {m}: {}",
                prepared.success_probability()
            );
        }
    }

    #[test]
    fn iterated_state_carries_exactly_the_ladder_amplitudes() {
        // n = 2, marked {1}, q = 2: workspace patterns of a marked prefix
        // read (first bit, second bit) and map onto the ladder as
        // [b0, b1, a0, a1]; every unmarked pattern carries b0.
        let prepared = younes_iterated(counting(2, vec![1]), 2).unwrap();
        let ladder = closed_form::amplitude_ladder(4, 1, 2).unwrap();
        let amps = prepared.state.amplitudes();
        let expected_marked = [
            ladder.b_list[0],
            ladder.b_list[1],
            ladder.a_list[0],
            ladder.a_list[1],
        ];
        for w in 0..4 {
            assert_close(amps[4 + w].re, expected_marked[w], 1e-12);
        }
        for prefix in [0usize, 2, 3] {
            for w in 0..4 {
                assert_close(amps[prefix * 4 + w].re, ladder.b_list[0], 1e-12);
            }
        }
    }

    #[test]
    fn iterated_rejects_zero_depth_and_over_capacity() {
        assert!(matches!(
            younes_iterated(counting(3, vec![1]), 0),
            Err(Error::InvalidArgument(_))
        ));
        let limit = max_qubits();
        assert!(matches!(
            younes_iterated(counting(3, vec![1]), limit),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn grover_matches_its_closed_form() {
        let prepared = grover(counting(2, vec![3]), 1).unwrap();
        assert_close(prepared.success_probability(), 1.0, 1e-12);
        assert_eq!(prepared.oracle.calls(), 1);

        let prepared = grover(counting(4, vec![4, 11]), 2).unwrap();
        assert_close(
            prepared.success_probability(),
            closed_form::p_grover(16, 2, 2).unwrap(),
            1e-12,
        );
        assert_eq!(prepared.oracle.calls(), 2);

        // Depth zero is the uniform superposition.
        let prepared = grover(counting(3, vec![0, 1, 2]), 0).unwrap();
        assert_close(prepared.success_probability(), 3.0 / 8.0, 1e-12);
        assert_eq!(prepared.oracle.calls(), 0);
        assert_eq!(prepared.state.num_qubits(), 3);
    }

    #[test]
    fn run_and_verify_agrees_with_the_oracle_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        // Everything marked: every draw is a solution.
        let mut prepared = younes_once(counting(2, (0..4).collect())).unwrap();
        for _ in 0..16 {
            let result = run_and_verify(&mut prepared, &mut rng, 7).unwrap();
            assert!(result.is_solution);
            assert_eq!(result.branch, Branch::YounesOnce);
            assert_eq!(result.q_used, 1);
            assert_eq!(result.seed, 7);
        }
        // Nothing marked: never a solution.
        let mut prepared = younes_once(counting(2, vec![])).unwrap();
        for _ in 0..16 {
            assert!(
                !run_and_verify(&mut prepared, &mut rng, 7)
                    .unwrap()
                    .is_solution
            );
        }
        // Probability-one case: the measured index is always one of the two
        // marked prefixes.
        let mut prepared = younes_once(counting(2, vec![0, 3])).unwrap();
        for _ in 0..16 {
            let result = run_and_verify(&mut prepared, &mut rng, 7).unwrap();
            assert!(result.is_solution);
            assert!(result.found_index == 0 || result.found_index == 3);
        }
    }

    #[test]
    fn oracle_call_accounting_is_exact() {
        for q in 1..=4u32 {
            let prepared = younes_iterated(counting(3, vec![2]), q).unwrap();
            assert_eq!(prepared.oracle.calls(), q as u64);
        }
        for q in 0..=5u32 {
            let prepared = grover(counting(3, vec![2]), q).unwrap();
            assert_eq!(prepared.oracle.calls(), q as u64);
        }
        assert_eq!(younes_once(counting(3, vec![2])).unwrap().oracle.calls(), 1);
    }
}
