//! Hybrid search engine: pick the circuit family from what is known about
//! the match count.
//!
//! With M known in advance the dispatch is a threshold: fewer than N/8
//! matches goes to Grover (O(√(N/M)) calls), everything from N/8 up goes to
//! the one-shot multi-match circuit (a single call, success at least one
//! half at the boundary). With M unknown, the iterated circuit runs first at
//! a small fixed depth; if its measurement fails verification, a randomized
//! Grover schedule with a growing depth bound takes over, inside a hard
//! query budget. Every measured candidate is verified classically, and the
//! two kinds of oracle usage are accounted separately.

use rand::Rng;

use crate::algorithms::{grover, run_and_verify, younes_iterated, younes_once, Branch, RunResult};
use crate::error::{Error, Result};
use crate::oracle::CountingOracle;

/// Tunables for [`search`].
#[derive(Clone, Debug)]
pub struct HybridPolicy {
    /// Match count to dispatch on, when known in advance.
    pub known_m: Option<usize>,
    /// Depth of the iterated circuit tried first when M is unknown.
    pub younes_q: u32,
    /// Total prepare-measure-verify attempts allowed on the dispatched
    /// branch when M is known.
    pub verify_retries: u32,
    /// Multiplier for the fallback depth bound per failed round.
    pub fallback_growth: f64,
    /// Query budget (superposed calls plus verification evaluations) for
    /// the whole fallback schedule.
    pub fallback_cap_calls: u64,
}

impl HybridPolicy {
    /// Defaults for an n-qubit search space: three iterations up front,
    /// three verified attempts, depth bound growing by 6/5 per round up to
    /// √N, and a fallback budget of ⌈9·√N⌉ calls.
    pub fn for_search_space(n: u32) -> Self {
        let sqrt_n = ((1u64 << n) as f64).sqrt();
        Self {
            known_m: None,
            younes_q: 3,
            verify_retries: 3,
            fallback_growth: 1.2,
            fallback_cap_calls: (9.0 * sqrt_n).ceil() as u64,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.younes_q == 0 {
            return Err(Error::InvalidArgument(
                "hybrid policy needs younes_q >= 1".into(),
            ));
        }
        if self.verify_retries == 0 {
            return Err(Error::InvalidArgument(
                "hybrid policy needs verify_retries >= 1".into(),
            ));
        }
        if self.fallback_growth <= 1.0 {
            return Err(Error::InvalidArgument(
                "hybrid policy needs fallback_growth > 1".into(),
            ));
        }
        Ok(())
    }
}

/// Choose the branch for a known match count: Grover strictly below N/8,
/// the one-shot circuit from N/8 up.
///
/// M = N is routed to the one-shot circuit as well, where its success
/// probability is exactly 1. M = 0 is a policy error: there is nothing to
/// dispatch a search for.
pub fn dispatch_known(n_items: usize, matches: usize) -> Result<Branch> {
    if matches == 0 {
        return Err(Error::InvalidArgument(
            "dispatch needs at least one known match".into(),
        ));
    }
    if matches > n_items {
        return Err(Error::InvalidArgument(format!(
            "known match count {matches} exceeds the search space {n_items}"
        )));
    }
    if 8 * matches < n_items {
        Ok(Branch::Grover)
    } else {
        Ok(Branch::YounesOnce)
    }
}

/// Grover depth used by the dispatcher: max(0, ⌊(π/4)·√(N/M) − 1/2⌋), the
/// near-optimal count that places (2q+1)θ by π/2.
pub fn grover_iteration_count(n_items: usize, matches: usize) -> Result<u32> {
    if matches == 0 || matches > n_items {
        return Err(Error::InvalidArgument(format!(
            "Grover depth needs 1 <= M <= N, got M = {matches}, N = {n_items}"
        )));
    }
    let raw = std::f64::consts::FRAC_PI_4 * (n_items as f64 / matches as f64).sqrt() - 0.5;
    Ok(if raw <= 0.0 { 0 } else { raw.floor() as u32 })
}

/// Run one hybrid search and report the sampled outcome.
///
/// Known M: run the dispatched branch up to `verify_retries` times, each
/// attempt one prepare-measure-verify cycle. Unknown M: run the iterated
/// circuit once at depth `younes_q`; on verification failure, repeatedly
/// draw a depth j uniformly below a bound that starts at 1 and grows by
/// `fallback_growth` per round (capped at √N), run Grover at depth j, and
/// verify — until a solution or the fallback budget is spent. A budget
/// exhausted without a verified solution yields `is_solution = false`,
/// never an error.
pub fn search(
    oracle: CountingOracle,
    policy: &HybridPolicy,
    rng: &mut impl Rng,
    seed: u64,
) -> Result<RunResult> {
    policy.validate()?;
    let n_items = oracle.spec().search_space();
    match policy.known_m {
        Some(matches) => search_known(oracle, policy, matches, n_items, rng, seed),
        None => search_unknown(oracle, policy, n_items, rng, seed),
    }
}

fn search_known(
    mut oracle: CountingOracle,
    policy: &HybridPolicy,
    matches: usize,
    n_items: usize,
    rng: &mut impl Rng,
    seed: u64,
) -> Result<RunResult> {
    let branch = dispatch_known(n_items, matches)?;
    let depth = match branch {
        Branch::Grover => grover_iteration_count(n_items, matches)?,
        _ => 1,
    };
    let mut last = None;
    for _attempt in 0..policy.verify_retries {
        let mut prepared = match branch {
            Branch::Grover => grover(oracle, depth)?,
            _ => younes_once(oracle)?,
        };
        let result = run_and_verify(&mut prepared, rng, seed)?;
        oracle = prepared.oracle;
        let solved = result.is_solution;
        last = Some(result);
        if solved {
            break;
        }
    }
    Ok(last.expect("at least one attempt runs"))
}

fn search_unknown(
    oracle: CountingOracle,
    policy: &HybridPolicy,
    n_items: usize,
    rng: &mut impl Rng,
    seed: u64,
) -> Result<RunResult> {
    let mut prepared = younes_iterated(oracle, policy.younes_q)?;
    let first = run_and_verify(&mut prepared, rng, seed)?;
    if first.is_solution {
        return Ok(first);
    }
    let mut oracle = prepared.oracle;
    let spent_before = oracle.calls() + oracle.classical_evals();
    let sqrt_n = (n_items as f64).sqrt();
    let mut depth_bound = 1.0f64;
    let mut last = first;
    loop {
        let spent = oracle.calls() + oracle.classical_evals() - spent_before;
        let depth = rng.gen_range(0..(depth_bound.floor() as u64).max(1)) as u32;
        // A round costs `depth` superposed calls plus one verification;
        // never start a round the budget cannot pay for.
        if spent + depth as u64 + 1 > policy.fallback_cap_calls {
            break;
        }
        let mut prepared = grover(oracle, depth)?;
        let mut result = run_and_verify(&mut prepared, rng, seed)?;
        oracle = prepared.oracle;
        result.branch = Branch::HybridFallback;
        let solved = result.is_solution;
        last = result;
        if solved {
            return Ok(last);
        }
        depth_bound = (depth_bound * policy.fallback_growth).min(sqrt_n);
    }
    Ok(last)
}
