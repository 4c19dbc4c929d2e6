//! Analytic predictors for the search algorithms: one-shot amplitudes and
//! probabilities, the iterated amplitude ladder and its closed form, the
//! Grover success curve, binomially weighted averages, and the coverage /
//! worst-case summaries derived from them.
//!
//! Everything here is a pure function of (N, M, q); the statevector
//! simulation in [`crate::algorithms`] must reproduce these numbers, and the
//! test suites hold the two routes against each other.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Largest search-space size whose binomial weights are computed with exact
/// integer arithmetic; beyond this the weights come from a log-space
/// recurrence.
const EXACT_BINOMIAL_LIMIT: usize = 64;

/// Cap on the binomially weighted averages, which cost O(N) per call.
const AVERAGE_LIMIT: usize = 1 << 20;

/// Reference register size for [`coverage_fraction`]: the largest size in
/// the single-iteration performance table (n = 6, N = 64). Coverage is the
/// fraction of realizable match counts M at this size that reach the
/// threshold, so the reported figure is a multiple of 1/64.
pub const COVERAGE_REFERENCE_N: usize = 64;

fn require_power_of_two(n_items: usize) -> Result<()> {
    if n_items < 2 || !n_items.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "search-space size must be a power of two >= 2, got {n_items}"
        )));
    }
    Ok(())
}

fn require_matches(n_items: usize, matches: usize) -> Result<()> {
    if matches > n_items {
        return Err(Error::InvalidArgument(format!(
            "match count {matches} exceeds search-space size {n_items}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Single iteration
// ---------------------------------------------------------------------------

/// Amplitudes after one oracle call and one mean inversion over the doubled
/// space P = 2N.
///
/// `a` sits on the M marked basis states whose workspace qubit reads 1, `b`
/// on everything else; `mean` is the amplitude mean that the inversion
/// reflected about. They satisfy M·a² + (P−M)·b² = 1 and a − b = 2/√P.
#[derive(Clone, Copy, Debug)]
pub struct OneShotAmplitudes {
    pub a: f64,
    pub b: f64,
    /// Doubled space size P = 2N (search register plus workspace qubit).
    pub doubled_space: f64,
    /// Mean amplitude before the inversion.
    pub mean: f64,
}

/// One-shot amplitudes a = (3 − 4M/P)/√P and b = (1 − 4M/P)/√P.
pub fn one_shot_amplitudes(n_items: usize, matches: usize) -> Result<OneShotAmplitudes> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    let p = 2.0 * n_items as f64;
    let m = matches as f64;
    let inv_sqrt_p = 1.0 / p.sqrt();
    let mean = (m * (-inv_sqrt_p) + (p - m) * inv_sqrt_p) / p;
    Ok(OneShotAmplitudes {
        a: inv_sqrt_p * (3.0 - 4.0 * m / p),
        b: inv_sqrt_p * (1.0 - 4.0 * m / p),
        doubled_space: p,
        mean,
    })
}

/// Success probability of the single-iteration algorithm as a function of
/// the match ratio x = M/N: the cubic 5x − 8x² + 4x³.
pub fn p_success_once_ratio(ratio: f64) -> f64 {
    ratio * (5.0 + ratio * (-8.0 + 4.0 * ratio))
}

/// Success probability of the single-iteration algorithm: M(a² + b²).
///
/// # Example
///
/// ```
/// use qsearch_core::closed_form::p_success_once;
///
/// // One match in four items; certainty at half the space.
/// assert_eq!(p_success_once(4, 1).unwrap(), 0.8125);
/// assert_eq!(p_success_once(64, 32).unwrap(), 1.0);
/// ```
pub fn p_success_once(n_items: usize, matches: usize) -> Result<f64> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    Ok(p_success_once_ratio(matches as f64 / n_items as f64))
}

/// Probability of measuring an unmarked index after one iteration:
/// (P − 2M)·b². Complements [`p_success_once`] to 1.
pub fn p_nonsuccess_once(n_items: usize, matches: usize) -> Result<f64> {
    let amps = one_shot_amplitudes(n_items, matches)?;
    let m = matches as f64;
    Ok((amps.doubled_space - 2.0 * m) * amps.b * amps.b)
}

// ---------------------------------------------------------------------------
// Iterated algorithm: the amplitude ladder and its closed form
// ---------------------------------------------------------------------------

/// Recurrence state of the iterated algorithm, tracked without simulating.
///
/// After q iterations the marked basis states carry `2^(q−1)` distinct
/// a-amplitudes (first workspace bit 1) and `2^(q−1)` distinct b-amplitudes
/// (first workspace bit 0); every unmarked state carries `b_list[0]`. Each
/// iteration reflects about a mean computed from the previous `b_list[0]`
/// and splits every amplitude v into the pair (2⟨α⟩ − v/√2, 2⟨α⟩ + v/√2).
#[derive(Clone, Debug)]
pub struct AmplitudeLadder {
    pub iterations: u32,
    pub a_list: Vec<f64>,
    pub b_list: Vec<f64>,
    /// The inversion means ⟨α_1⟩ … ⟨α_q⟩, in iteration order.
    pub mean_history: Vec<f64>,
}

impl AmplitudeLadder {
    /// Success probability by direct summation: M·Σ_i(a_i² + b_i²).
    pub fn success_probability(&self, matches: usize) -> f64 {
        let mass: f64 = self
            .a_list
            .iter()
            .chain(self.b_list.iter())
            .map(|v| v * v)
            .sum();
        matches as f64 * mass
    }

    /// The amplitude shared by every unmarked basis state.
    pub fn unmarked_amplitude(&self) -> f64 {
        self.b_list[0]
    }

    /// Total probability mass: marked ladder mass plus the `2^q (N−M)`
    /// unmarked states at `b_list[0]`. Equals 1 for a valid ladder.
    pub fn total_mass(&self, n_items: usize, matches: usize) -> f64 {
        let unmarked = (n_items - matches) as f64
            * (1u64 << self.iterations) as f64
            * self.b_list[0]
            * self.b_list[0];
        self.success_probability(matches) + unmarked
    }
}

/// Run the amplitude recurrence for q ≥ 1 iterations.
///
/// Seeds a = b = 1/√N. The first iteration keeps single entries with signs
/// (a gains +v/√2, b gains −v/√2); every later iteration doubles both lists,
/// each value v spawning (2⟨α⟩ − v/√2, 2⟨α⟩ + v/√2) in that order.
pub fn amplitude_ladder(n_items: usize, matches: usize, q: u32) -> Result<AmplitudeLadder> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    if q == 0 {
        return Err(Error::InvalidArgument(
            "amplitude ladder needs at least one iteration".into(),
        ));
    }
    let ratio = matches as f64 / n_items as f64;
    let seed = 1.0 / (n_items as f64).sqrt();
    let mut a_list = vec![seed];
    let mut b_list = vec![seed];
    let mut mean_history = Vec::with_capacity(q as usize);
    for step in 1..=q {
        let mean = b_list[0] * FRAC_1_SQRT_2 * (1.0 - ratio);
        mean_history.push(mean);
        if step == 1 {
            a_list[0] = 2.0 * mean + a_list[0] * FRAC_1_SQRT_2;
            b_list[0] = 2.0 * mean - b_list[0] * FRAC_1_SQRT_2;
        } else {
            a_list = split_amplitudes(&a_list, mean);
            b_list = split_amplitudes(&b_list, mean);
        }
    }
    Ok(AmplitudeLadder {
        iterations: q,
        a_list,
        b_list,
        mean_history,
    })
}

fn split_amplitudes(previous: &[f64], mean: f64) -> Vec<f64> {
    previous
        .iter()
        .flat_map(|&v| {
            [
                2.0 * mean - v * FRAC_1_SQRT_2,
                2.0 * mean + v * FRAC_1_SQRT_2,
            ]
        })
        .collect()
}

/// Closed form for the iterated success probability as a function of the
/// match ratio: (x − 1)(1 − 2x)^(2q) + 1. Yields 0 at x = 0 and reduces to
/// the one-shot cubic at q = 1.
pub fn p_success_iterated_ratio(ratio: f64, q: u32) -> f64 {
    (ratio - 1.0) * (1.0 - 2.0 * ratio).powi(2 * q as i32) + 1.0
}

/// Closed form for the iterated success probability after q ≥ 1 iterations.
pub fn p_success_iterated(n_items: usize, matches: usize, q: u32) -> Result<f64> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    if q == 0 {
        return Err(Error::InvalidArgument(
            "the iterated algorithm needs at least one iteration".into(),
        ));
    }
    Ok(p_success_iterated_ratio(matches as f64 / n_items as f64, q))
}

/// Closed form for the common unmarked amplitude after q iterations:
/// (1/√N)·(1/√2)^q·(1 − 2M/N)^q. Matches the ladder's `b_list[0]`.
pub fn unmarked_amplitude_closed(n_items: usize, matches: usize, q: u32) -> Result<f64> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    let ratio = matches as f64 / n_items as f64;
    Ok((1.0 / (n_items as f64).sqrt())
        * FRAC_1_SQRT_2.powi(q as i32)
        * (1.0 - 2.0 * ratio).powi(q as i32))
}

// ---------------------------------------------------------------------------
// Grover success curve
// ---------------------------------------------------------------------------

/// Grover success probability as a function of the match ratio:
/// sin²((2q+1)·θ) with sin²θ = x. Requires x in (0, 1].
pub fn p_grover_ratio(ratio: f64, q: u32) -> f64 {
    let theta = ratio.sqrt().asin();
    ((2 * q + 1) as f64 * theta).sin().powi(2)
}

/// Grover success probability after q iterations.
///
/// M = 0 is rejected: the rotation angle θ defined by sin²θ = M/N carries no
/// information there (the algorithm never moves amplitude), so callers must
/// handle the no-match case themselves.
pub fn p_grover(n_items: usize, matches: usize, q: u32) -> Result<f64> {
    require_power_of_two(n_items)?;
    require_matches(n_items, matches)?;
    if matches == 0 {
        return Err(Error::InvalidArgument(
            "Grover's success curve is undefined for zero matches".into(),
        ));
    }
    Ok(p_grover_ratio(matches as f64 / n_items as f64, q))
}

// ---------------------------------------------------------------------------
// Binomially weighted averages
// ---------------------------------------------------------------------------

/// Binomial weights C(N, M)/2^N for M = 0..=N.
///
/// Exact 128-bit integer arithmetic up to N = 64, log-space recurrence
/// beyond (each item of the list is marked independently with probability
/// one half, so the weights are the fair-coin binomial distribution).
fn binomial_weights(n_items: usize) -> Vec<f64> {
    let n = n_items as u64;
    if n_items <= EXACT_BINOMIAL_LIMIT {
        let denom = 2f64.powi(n_items as i32);
        (0..=n)
            .map(|m| binomial_u128(n, m) as f64 / denom)
            .collect()
    } else {
        let ln2 = std::f64::consts::LN_2;
        let mut ln_w = -(n_items as f64) * ln2;
        let mut weights = Vec::with_capacity(n_items + 1);
        weights.push(ln_w.exp());
        for m in 0..n {
            ln_w += ((n - m) as f64).ln() - ((m + 1) as f64).ln();
            weights.push(ln_w.exp());
        }
        weights
    }
}

/// Exact C(n, k) by the multiplicative rule; every intermediate division is
/// exact. Fits in u128 for n <= 64.
fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Probability weights C(N, M)/2^N of each match count M = 0..=N under the
/// black-box model where every item is marked by a fair coin. Exposed so
/// simulated per-M probabilities can be averaged the same way the closed
/// forms are.
pub fn match_count_weights(n_items: usize) -> Result<Vec<f64>> {
    require_power_of_two(n_items)?;
    if n_items > AVERAGE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "averages are capped at N = {AVERAGE_LIMIT} (got {n_items})"
        )));
    }
    Ok(binomial_weights(n_items))
}

/// Average single-iteration success probability over a black-box oracle
/// that marks each item independently with probability one half:
/// (1/2^N)·Σ_{M=1}^{N} C(N,M)·P_s(M/N), by direct summation.
pub fn average_p_once(n_items: usize) -> Result<f64> {
    require_power_of_two(n_items)?;
    if n_items > AVERAGE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "averages are capped at N = {AVERAGE_LIMIT} (got {n_items})"
        )));
    }
    let weights = binomial_weights(n_items);
    Ok((1..=n_items)
        .map(|m| weights[m] * p_success_once_ratio(m as f64 / n_items as f64))
        .sum())
}

/// Average success probability of one classical random guess under the same
/// weighting: (1/2^N)·Σ C(N,M)·(M/N), which sums to exactly one half.
pub fn average_p_classical(n_items: usize) -> Result<f64> {
    require_power_of_two(n_items)?;
    if n_items > AVERAGE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "averages are capped at N = {AVERAGE_LIMIT} (got {n_items})"
        )));
    }
    let weights = binomial_weights(n_items);
    Ok((1..=n_items)
        .map(|m| weights[m] * m as f64 / n_items as f64)
        .sum())
}

/// Σ_{M=1}^{N} C(N,M)·sin²(k·θ_M) with sin²θ_M = M/N, for odd k.
///
/// Pairing M with N−M shows the sum equals 2^(N−1), which makes the
/// binomially weighted Grover average exactly one half. Any list size N
/// works here; the pairing argument does not need a power of two.
pub fn grover_sum_identity(n_items: usize, k: u32) -> Result<f64> {
    if n_items == 0 {
        return Err(Error::InvalidArgument(
            "identity sum needs a non-empty list".into(),
        ));
    }
    if n_items > 20 {
        return Err(Error::InvalidArgument(format!(
            "identity sum is capped at N = 20 (got {n_items})"
        )));
    }
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "identity requires an odd multiplier, got {k}"
        )));
    }
    let n = n_items as u64;
    Ok((1..=n)
        .map(|m| {
            let theta = (m as f64 / n_items as f64).sqrt().asin();
            binomial_u128(n, m) as f64 * (k as f64 * theta).sin().powi(2)
        })
        .sum())
}

// ---------------------------------------------------------------------------
// Iteration counts and coverage
// ---------------------------------------------------------------------------

/// Taylor-expansion lower bound on the iterations needed to reach
/// `target_p`: (target_p − x)/(4x(1 − x)) with x = M/N. Grows as Θ(N/M) for
/// small ratios. See [`exact_iterations`] for the companion exact solve.
pub fn iterations_lower_bound(n_items: usize, matches: usize, target_p: f64) -> Result<f64> {
    require_power_of_two(n_items)?;
    if matches == 0 || matches >= n_items {
        return Err(Error::InvalidArgument(format!(
            "iteration bound needs 0 < M < N, got M = {matches}, N = {n_items}"
        )));
    }
    if !(0.0 < target_p && target_p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target probability must lie in (0, 1), got {target_p}"
        )));
    }
    let x = matches as f64 / n_items as f64;
    Ok((target_p - x) / (4.0 * x * (1.0 - x)))
}

/// Exact (real-valued) q solving the iterated closed form for `target_p`
/// by logarithms; 0 when the target is already met before iterating.
pub fn exact_iterations(n_items: usize, matches: usize, target_p: f64) -> Result<f64> {
    require_power_of_two(n_items)?;
    if matches == 0 || matches >= n_items {
        return Err(Error::InvalidArgument(format!(
            "exact iteration count needs 0 < M < N, got M = {matches}, N = {n_items}"
        )));
    }
    if !(0.0 < target_p && target_p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target probability must lie in (0, 1), got {target_p}"
        )));
    }
    let x = matches as f64 / n_items as f64;
    let shrink = (1.0 - 2.0 * x).abs();
    if shrink == 0.0 {
        // M = N/2 reaches certainty on the first iteration.
        return Ok(0.0);
    }
    let q = ((1.0 - target_p) / (1.0 - x)).ln() / (2.0 * shrink.ln());
    Ok(q.max(0.0))
}

/// Least match ratio x in (0, 1/2] whose iterated success probability
/// reaches `threshold_p`, located by bisection to 1e-9. The closed form is
/// strictly increasing on this interval, so the crossing is unique.
pub fn coverage_crossing_ratio(q: u32, threshold_p: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if p_success_iterated_ratio(mid, q) >= threshold_p {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Fraction of the problem space covered by q iterations at the given
/// threshold, measured over realizable match counts at the
/// [`COVERAGE_REFERENCE_N`] register: 1 − M*/N where M* is the least match
/// count whose success probability reaches the threshold.
pub fn coverage_fraction(q: u32, threshold_p: f64) -> f64 {
    let n = COVERAGE_REFERENCE_N as f64;
    let crossing = coverage_crossing_ratio(q, threshold_p);
    let mut m_star = (crossing * n).ceil().max(1.0) as usize;
    while m_star > 1 && p_success_iterated_ratio((m_star - 1) as f64 / n, q) >= threshold_p {
        m_star -= 1;
    }
    while m_star <= COVERAGE_REFERENCE_N
        && p_success_iterated_ratio(m_star as f64 / n, q) < threshold_p
    {
        m_star += 1;
    }
    1.0 - m_star as f64 / n
}

/// Minimum of the iterated success probability over the heavy-match range
/// x in [1/2, 1], returned as (argmin, minimum).
///
/// The stationary ratio is x* = (4q+1)/(4q+2), from differentiating the
/// closed form; the endpoints both give probability 1.
pub fn min_p_over_upper_range(q: u32) -> (f64, f64) {
    let x_star = (4.0 * q as f64 + 1.0) / (4.0 * q as f64 + 2.0);
    (x_star, p_success_iterated_ratio(x_star, q))
}
