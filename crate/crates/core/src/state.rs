//! Dense statevector register with gate application and marginal measurement.
//!
//! A register of `num_qubits` qubits holds `2^num_qubits` complex amplitudes.
//! Basis indices are read most-significant-bit first: qubit 0 is the highest
//! bit of the index, and every workspace qubit appended during a search
//! iteration becomes the new lowest bit. The joint state |i⟩ ⊗ |w⟩ with `i`
//! on the first n qubits and `w` on one workspace qubit therefore lives at
//! index `2·i + w`, and the "first n qubits" always form a contiguous
//! high-bit prefix.
//!
//! Gates mutate the state in place and return `&mut Self` so call sites can
//! either chain or sequence them. Normalization is asserted after every gate
//! in debug builds rather than silently re-imposed.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Register width cap when `QSEARCH_MAX_QUBITS` is not set.
///
/// 24 qubits is 2^24 amplitudes = 256 MiB of `Complex64`, a sane ceiling for
/// a dense simulator on desktop hardware.
pub const DEFAULT_MAX_QUBITS: u32 = 24;

/// Effective register width limit.
///
/// Reads the `QSEARCH_MAX_QUBITS` environment variable; unset or unparsable
/// values fall back to [`DEFAULT_MAX_QUBITS`].
pub fn max_qubits() -> u32 {
    std::env::var("QSEARCH_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

/// Normalization slack allowed after any sequence of gate applications.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Unitarity tolerance for matrices given to [`StateVector::apply_unitary_dense`].
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Dense register of complex amplitudes over `2^num_qubits` basis states.
///
/// # Example
///
/// ```
/// use qsearch_core::StateVector;
///
/// // |00⟩ → uniform superposition over the first qubit: index 0 is |00⟩,
/// // index 2 is |10⟩ under the MSB-first layout.
/// let mut state = StateVector::new_zero(2).unwrap();
/// state.apply_hadamard(0).unwrap();
/// assert!((state.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-12);
/// assert!((state.amplitudes()[2].re - 0.5f64.sqrt()).abs() < 1e-12);
/// for p in state.marginal_probabilities(1).unwrap() {
///     assert!((p - 0.5).abs() < 1e-12);
/// }
/// ```
#[derive(Clone, Debug)]
pub struct StateVector {
    num_qubits: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Prepare |0…0⟩ on `num_qubits` qubits: amplitude 1 at index 0.
    pub fn new_zero(num_qubits: u32) -> Result<Self> {
        let limit = max_qubits();
        if num_qubits == 0 || num_qubits > limit {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                limit,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Build a register from explicit amplitudes.
    ///
    /// The slice length must be exactly `2^num_qubits` and the squared
    /// magnitudes must sum to 1 within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(num_qubits: u32, amps: Vec<Complex64>) -> Result<Self> {
        let limit = max_qubits();
        if num_qubits == 0 || num_qubits > limit {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                limit,
            });
        }
        if amps.len() != 1usize << num_qubits {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1usize << num_qubits,
                num_qubits,
                amps.len()
            )));
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "amplitudes are not normalized: Σ|α|² = {norm}"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    /// Number of basis states, `2^num_qubits`.
    pub fn dimension(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Sum of squared amplitude magnitudes, Σ |α|².
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Raw amplitude access for the in-crate oracle and diffusion sweeps.
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub(crate) fn swap_amplitudes(&mut self, i: usize, j: usize) {
        self.amps.swap(i, j);
    }

    pub(crate) fn negate_amplitude(&mut self, k: usize) {
        self.amps[k] = -self.amps[k];
    }

    pub(crate) fn debug_check_norm(&self) {
        self.debug_assert_normalized();
    }

    /// Bit mask selecting `qubit` inside a basis index (MSB-first layout).
    fn mask(&self, qubit: u32) -> Result<usize> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                width: self.num_qubits,
            });
        }
        Ok(1usize << (self.num_qubits - 1 - qubit))
    }

    #[inline]
    fn debug_assert_normalized(&self) {
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE,
            "state lost normalization: Σ|α|² = {}",
            self.norm_sqr()
        );
    }

    /// NOT gate: swap the amplitudes of every basis pair that differs only
    /// in `qubit`.
    pub fn apply_x(&mut self, qubit: u32) -> Result<&mut Self> {
        let mask = self.mask(qubit)?;
        for k in 0..self.amps.len() {
            if k & mask == 0 {
                self.amps.swap(k, k | mask);
            }
        }
        self.debug_assert_normalized();
        Ok(self)
    }

    /// Hadamard gate: each pair (α₀, α₁) differing only in `qubit` maps to
    /// ((α₀+α₁)/√2, (α₀−α₁)/√2).
    pub fn apply_hadamard(&mut self, qubit: u32) -> Result<&mut Self> {
        let mask = self.mask(qubit)?;
        for k in 0..self.amps.len() {
            if k & mask == 0 {
                let lo = self.amps[k];
                let hi = self.amps[k | mask];
                self.amps[k] = (lo + hi) * FRAC_1_SQRT_2;
                self.amps[k | mask] = (lo - hi) * FRAC_1_SQRT_2;
            }
        }
        self.debug_assert_normalized();
        Ok(self)
    }

    /// Hadamard on every qubit in `qubits`, in ascending order.
    ///
    /// The per-qubit transforms commute, so the order is unobservable; an
    /// empty range is the identity.
    pub fn apply_hadamard_range(&mut self, qubits: std::ops::Range<u32>) -> Result<&mut Self> {
        for q in qubits {
            self.apply_hadamard(q)?;
        }
        Ok(self)
    }

    /// Multi-controlled NOT: flip `target` on exactly those basis states
    /// whose control bits are all 1.
    ///
    /// `controls` may be empty (plain X). All named qubits must be distinct.
    pub fn apply_controlled_not(&mut self, controls: &[u32], target: u32) -> Result<&mut Self> {
        let target_mask = self.mask(target)?;
        let mut control_mask = 0usize;
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(Error::InvalidArgument(format!(
                    "controls and target must be distinct qubits (qubit {c} repeats)"
                )));
            }
            control_mask |= self.mask(c)?;
        }
        for k in 0..self.amps.len() {
            if k & control_mask == control_mask && k & target_mask == 0 {
                self.amps.swap(k, k | target_mask);
            }
        }
        self.debug_assert_normalized();
        Ok(self)
    }

    /// Apply a dense `2^m × 2^m` unitary to the named qubits, identity on the
    /// rest.
    ///
    /// `matrix` is row-major; `qubits[0]` indexes the most significant bit of
    /// the block. Intended for small-m cross-checks of the fast gate paths,
    /// so `m` is capped at 10 and the matrix is verified unitary within
    /// [`UNITARY_TOLERANCE`] before use.
    pub fn apply_unitary_dense(
        &mut self,
        matrix: &[Complex64],
        qubits: &[u32],
    ) -> Result<&mut Self> {
        let m = qubits.len();
        if m == 0 || m > 10 {
            return Err(Error::InvalidArgument(format!(
                "dense unitaries support 1..=10 qubits, got {m}"
            )));
        }
        let dim = 1usize << m;
        if matrix.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected a {dim}x{dim} matrix, got {} entries",
                matrix.len()
            )));
        }
        let mut masks = Vec::with_capacity(m);
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[..i].contains(&q) {
                return Err(Error::InvalidArgument(format!(
                    "qubit {q} repeats in the dense-unitary target list"
                )));
            }
            masks.push(self.mask(q)?);
        }

        // Unitarity: columns must be orthonormal, U†U = I.
        let mut deviation: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    dot += matrix[k * dim + i].conj() * matrix[k * dim + j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((dot - expect).norm());
            }
        }
        if deviation > UNITARY_TOLERANCE {
            return Err(Error::NonUnitary {
                deviation,
                tolerance: UNITARY_TOLERANCE,
            });
        }

        // Walk each coset of the targeted qubits once: the coset key is the
        // basis index with all targeted bits cleared.
        let all_targets: usize = masks.iter().sum();
        let mut block = vec![Complex64::new(0.0, 0.0); dim];
        for key in 0..self.amps.len() {
            if key & all_targets != 0 {
                continue;
            }
            for (b, slot) in block.iter_mut().enumerate() {
                *slot = self.amps[key | Self::spread(b, &masks)];
            }
            for (row, chunk) in matrix.chunks_exact(dim).enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (col, &u) in chunk.iter().enumerate() {
                    acc += u * block[col];
                }
                self.amps[key | Self::spread(row, &masks)] = acc;
            }
        }
        self.debug_assert_normalized();
        Ok(self)
    }

    /// Scatter the bits of a block index `b` onto the register masks;
    /// bit 0 of `b` (least significant) maps to the last mask.
    fn spread(b: usize, masks: &[usize]) -> usize {
        let mut out = 0usize;
        for (i, &mask) in masks.iter().enumerate() {
            if b >> (masks.len() - 1 - i) & 1 == 1 {
                out |= mask;
            }
        }
        out
    }

    /// Append a fresh workspace qubit in state |0⟩ as the new least
    /// significant bit: amplitude of index k moves to index 2k.
    pub fn push_workspace_qubit(&mut self) -> Result<&mut Self> {
        let limit = max_qubits();
        if self.num_qubits + 1 > limit {
            return Err(Error::CapacityExceeded {
                requested: self.num_qubits + 1,
                limit,
            });
        }
        let mut grown = vec![Complex64::new(0.0, 0.0); self.amps.len() * 2];
        for (k, &a) in self.amps.iter().enumerate() {
            grown[2 * k] = a;
        }
        self.amps = grown;
        self.num_qubits += 1;
        Ok(self)
    }

    /// Measurement distribution over the first `first_n` qubits.
    ///
    /// Entry `i` sums |amplitude|² over every workspace pattern behind the
    /// prefix `i`; the entries sum to 1 within [`NORM_TOLERANCE`].
    pub fn marginal_probabilities(&self, first_n: u32) -> Result<Vec<f64>> {
        if first_n > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: first_n,
                width: self.num_qubits,
            });
        }
        let block = 1usize << (self.num_qubits - first_n);
        let probs = self
            .amps
            .chunks_exact(block)
            .map(|chunk| chunk.iter().map(|a| a.norm_sqr()).sum())
            .collect();
        Ok(probs)
    }

    /// Measure the first `first_n` qubits: sample a prefix from the marginal
    /// distribution, zero every amplitude with a different prefix, and
    /// re-normalize so the total probability is 1 again.
    ///
    /// Returns the observed prefix index.
    pub fn measure_first_n(&mut self, first_n: u32, rng: &mut impl Rng) -> Result<usize> {
        let marginal = self.marginal_probabilities(first_n)?;
        let index = sample_from_weights(&marginal, rng)?;
        let block = 1usize << (self.num_qubits - first_n);
        let start = index * block;
        let kept: f64 = self.amps[start..start + block]
            .iter()
            .map(|a| a.norm_sqr())
            .sum();
        let scale = 1.0 / kept.sqrt();
        for (k, amp) in self.amps.iter_mut().enumerate() {
            if k / block == index {
                *amp *= scale;
            } else {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
        self.debug_assert_normalized();
        Ok(index)
    }
}

/// Draw an index from non-negative weights; used by [`StateVector::measure_first_n`]
/// and [`MarginalSampler`].
fn sample_from_weights(weights: &[f64], rng: &mut impl Rng) -> Result<usize> {
    let total: f64 = weights.iter().sum();
    if total <= 1e-12 {
        return Err(Error::InvariantViolation(
            "measurement marginal is all zero".into(),
        ));
    }
    let u = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_nonzero = i;
        }
        acc += w;
        if u < acc && w > 0.0 {
            return Ok(i);
        }
    }
    // Rounding pushed u past the accumulated total; land on the final
    // positive-probability index.
    Ok(last_nonzero)
}

/// Cumulative-distribution sampler for repeated draws from one prepared
/// state's marginal, without collapsing it.
///
/// Each draw costs a binary search instead of an O(2^n) sweep, which is what
/// makes 10^5-shot experiments cheap: the circuit is deterministic, so the
/// prepared state is shared and only the measurement randomness differs per
/// shot.
pub struct MarginalSampler {
    cumulative: Vec<f64>,
    weights: Vec<f64>,
    total: f64,
}

impl MarginalSampler {
    pub fn new(state: &StateVector, first_n: u32) -> Result<Self> {
        let weights = state.marginal_probabilities(first_n)?;
        let total: f64 = weights.iter().sum();
        if total <= 1e-12 {
            return Err(Error::InvariantViolation(
                "measurement marginal is all zero".into(),
            ));
        }
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cumulative.push(acc);
        }
        Ok(Self {
            cumulative,
            weights,
            total,
        })
    }

    /// Sample one prefix index.
    pub fn draw(&self, rng: &mut impl Rng) -> usize {
        let u = rng.gen::<f64>() * self.total;
        let mut i = self.cumulative.partition_point(|&c| c <= u);
        i = i.min(self.weights.len() - 1);
        // Never report a zero-probability index if a boundary was hit exactly.
        while self.weights[i] == 0.0 && i > 0 {
            i -= 1;
        }
        while self.weights[i] == 0.0 && i + 1 < self.weights.len() {
            i += 1;
        }
        i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (tol {tol})"
        );
    }

    fn re(state: &StateVector) -> Vec<f64> {
        state.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn new_zero_is_basis_state_zero() {
        let s = StateVector::new_zero(1).unwrap();
        assert_eq!(re(&s), vec![1.0, 0.0]);
        let s = StateVector::new_zero(2).unwrap();
        assert_eq!(re(&s), vec![1.0, 0.0, 0.0, 0.0]);
        let s = StateVector::new_zero(3).unwrap();
        assert_close(s.norm_sqr(), 1.0, 1e-15);
    }

    #[test]
    fn new_zero_rejects_widths_over_limit() {
        // Default limit is 24 qubits unless the environment raises it.
        let limit = max_qubits();
        assert!(matches!(
            StateVector::new_zero(limit + 1),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(matches!(
            StateVector::new_zero(0),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn x_swaps_the_qubit_pair() {
        // α|0⟩ + β|1⟩ → β|0⟩ + α|1⟩
        let mut s = StateVector::from_amplitudes(
            1,
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)],
        )
        .unwrap();
        s.apply_x(0).unwrap();
        assert_eq!(re(&s), vec![0.8, 0.6]);
        s.apply_x(0).unwrap();
        assert_eq!(re(&s), vec![0.6, 0.8]);
    }

    #[test]
    fn x_on_qubit_zero_flips_the_most_significant_bit() {
        // Hand enumeration: |00⟩ → |10⟩, which is index 2 MSB-first.
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_x(0).unwrap();
        assert_eq!(re(&s), vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn hadamard_splits_and_recombines() {
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_hadamard(0).unwrap();
        assert_close(s.amplitudes()[0].re, FRAC_1_SQRT_2, 1e-15);
        assert_close(s.amplitudes()[1].re, FRAC_1_SQRT_2, 1e-15);
        // H|1⟩ = (|0⟩ − |1⟩)/√2
        let mut s1 = StateVector::new_zero(1).unwrap();
        s1.apply_x(0).unwrap().apply_hadamard(0).unwrap();
        assert_close(s1.amplitudes()[0].re, FRAC_1_SQRT_2, 1e-15);
        assert_close(s1.amplitudes()[1].re, -FRAC_1_SQRT_2, 1e-15);
        // H² = I
        s.apply_hadamard(0).unwrap();
        assert_close(s.amplitudes()[0].re, 1.0, 1e-12);
        assert_close(s.amplitudes()[1].re, 0.0, 1e-12);
    }

    #[test]
    fn hadamard_range_builds_uniform_superposition() {
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_hadamard_range(0..2).unwrap();
        for &a in s.amplitudes() {
            assert_close(a.re, 0.5, 1e-15);
        }
        let mut s3 = StateVector::new_zero(3).unwrap();
        s3.apply_hadamard_range(0..3).unwrap();
        for &a in s3.amplitudes() {
            assert_close(a.re, 1.0 / 8f64.sqrt(), 1e-15);
        }
        // Empty range is the identity.
        let before = re(&s3);
        s3.apply_hadamard_range(1..1).unwrap();
        assert_eq!(re(&s3), before);
    }

    #[test]
    fn controlled_not_flips_only_when_controls_are_set() {
        // |10⟩ with control on qubit 0 flips the target: |10⟩ → |11⟩.
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_x(0).unwrap();
        s.apply_controlled_not(&[0], 1).unwrap();
        assert_eq!(re(&s), vec![0.0, 0.0, 0.0, 1.0]);
        // Control unsatisfied: |00⟩ stays |00⟩.
        let mut s0 = StateVector::new_zero(2).unwrap();
        s0.apply_controlled_not(&[0], 1).unwrap();
        assert_eq!(re(&s0), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn toffoli_permutes_exactly_the_full_control_block() {
        // Enumerate all 8 basis states: only indices 6 (110) and 7 (111)
        // trade places under controls {0,1}, target 2.
        for input in 0..8usize {
            let mut amps = vec![Complex64::new(0.0, 0.0); 8];
            amps[input] = Complex64::new(1.0, 0.0);
            let mut s = StateVector::from_amplitudes(3, amps).unwrap();
            s.apply_controlled_not(&[0, 1], 2).unwrap();
            let expected = match input {
                6 => 7,
                7 => 6,
                other => other,
            };
            for (k, a) in s.amplitudes().iter().enumerate() {
                let want = if k == expected { 1.0 } else { 0.0 };
                assert_close(a.re, want, 1e-15);
            }
        }
    }

    #[test]
    fn controlled_not_rejects_overlapping_qubits() {
        let mut s = StateVector::new_zero(3).unwrap();
        assert!(matches!(
            s.apply_controlled_not(&[1], 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            s.apply_controlled_not(&[0, 0], 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn dense_identity_leaves_state_unchanged() {
        let mut s = StateVector::new_zero(3).unwrap();
        s.apply_hadamard_range(0..3).unwrap();
        let before = re(&s);
        let eye: Vec<Complex64> = (0..16)
            .map(|k| Complex64::new(if k % 5 == 0 { 1.0 } else { 0.0 }, 0.0))
            .collect();
        s.apply_unitary_dense(&eye, &[1, 2]).unwrap();
        for (a, b) in re(&s).iter().zip(before.iter()) {
            assert_close(*a, *b, 1e-12);
        }
    }

    #[test]
    fn dense_x_matches_fast_x() {
        let x_matrix = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut raw: Vec<Complex64> = (0..8)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            raw.iter_mut().for_each(|a| *a /= norm);
            let qubit = rng.gen_range(0..3u32);

            let mut fast = StateVector::from_amplitudes(3, raw.clone()).unwrap();
            let mut dense = StateVector::from_amplitudes(3, raw).unwrap();
            fast.apply_x(qubit).unwrap();
            dense.apply_unitary_dense(&x_matrix, &[qubit]).unwrap();
            for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
                assert!((a - b).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn dense_rejects_non_unitary_matrices() {
        let mut s = StateVector::new_zero(1).unwrap();
        let bad = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        assert!(matches!(
            s.apply_unitary_dense(&bad, &[0]),
            Err(Error::NonUnitary { .. })
        ));
    }

    #[test]
    fn push_workspace_qubit_appends_a_zero_lsb() {
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_hadamard(0).unwrap();
        s.push_workspace_qubit().unwrap();
        assert_eq!(s.num_qubits(), 2);
        let a = re(&s);
        assert_close(a[0], FRAC_1_SQRT_2, 1e-15);
        assert_close(a[1], 0.0, 1e-15);
        assert_close(a[2], FRAC_1_SQRT_2, 1e-15);
        assert_close(a[3], 0.0, 1e-15);
    }

    #[test]
    fn marginal_over_uniform_state_is_uniform() {
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_hadamard_range(0..2).unwrap();
        let m = s.marginal_probabilities(1).unwrap();
        assert_close(m[0], 0.5, 1e-12);
        assert_close(m[1], 0.5, 1e-12);
        // first_n == num_qubits degenerates to elementwise |α|².
        let full = s.marginal_probabilities(2).unwrap();
        for p in full {
            assert_close(p, 0.25, 1e-12);
        }
    }

    #[test]
    fn measurement_of_a_deterministic_prefix_is_deterministic() {
        // |10⟩ ⊗ anything always measures prefix 2 on the first 2 qubits.
        let mut s = StateVector::new_zero(3).unwrap();
        s.apply_x(0).unwrap().apply_hadamard(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let idx = s.measure_first_n(2, &mut rng).unwrap();
        assert_eq!(idx, 2);
        assert_close(s.norm_sqr(), 1.0, 1e-12);
    }

    #[test]
    fn measurement_is_reproducible_for_a_fixed_seed() {
        let mut outcomes = Vec::new();
        for _ in 0..2 {
            let mut s = StateVector::new_zero(3).unwrap();
            s.apply_hadamard_range(0..3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let mut run = Vec::new();
            for _ in 0..8 {
                let mut copy = s.clone();
                run.push(copy.measure_first_n(3, &mut rng).unwrap());
            }
            outcomes.push(run);
        }
        assert_eq!(outcomes[0], outcomes[1]);
    }

    #[test]
    fn measurement_collapses_and_renormalizes() {
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_hadamard(0).unwrap().apply_hadamard(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let idx = s.measure_first_n(1, &mut rng).unwrap();
        let m = s.marginal_probabilities(1).unwrap();
        assert_close(m[idx], 1.0, 1e-12);
        assert_close(m[1 - idx], 0.0, 1e-12);
    }

    #[test]
    fn sampler_frequencies_match_the_marginal_within_3_sigma() {
        // Marginal [0.25, 0.5, 0.0, 0.25] over the first 2 qubits of a
        // hand-built 3-qubit state; 10^5 draws against binomial bounds.
        let h = FRAC_1_SQRT_2;
        let amps = vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h * 0.5, 0.0),
            Complex64::new(h * 0.5, 0.0),
        ];
        let s = StateVector::from_amplitudes(3, amps).unwrap();
        let sampler = MarginalSampler::new(&s, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let shots = 100_000usize;
        let mut counts = [0usize; 4];
        for _ in 0..shots {
            counts[sampler.draw(&mut rng)] += 1;
        }
        let expected = [0.25, 0.5, 0.0, 0.25];
        for (i, &p) in expected.iter().enumerate() {
            let sigma = (p * (1.0 - p) / shots as f64).sqrt();
            let freq = counts[i] as f64 / shots as f64;
            assert!(
                (freq - p).abs() <= 3.0 * sigma + 1e-12,
                "prefix {i}: frequency {freq} vs p {p}"
            );
        }
        assert_eq!(counts[2], 0);
    }

    #[test]
    fn degenerate_marginal_is_an_invariant_violation() {
        let err = sample_from_weights(&[0.0, 0.0], &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(err, Err(Error::InvariantViolation(_))));
    }
}
