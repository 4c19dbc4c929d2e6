//! Benchmark the hybrid engine: many seeded searches, aggregated into a
//! success rate, mean query costs, and a branch histogram.

use serde_json::{json, Value};
use std::collections::BTreeMap;

use qsearch_core::seeds::shot_rng;
use qsearch_core::{search, CountingOracle, Error, HybridPolicy, OracleSpec, Result};

/// Run `shots` independent hybrid searches against one oracle.
///
/// With `known_m` set, the dispatcher is told the true match count of the
/// parsed oracle; otherwise it runs the unknown-count schedule. Each shot
/// gets its own random stream derived from (seed, shot index).
pub fn run_hybrid(
    n: u32,
    marked_text: &str,
    known_m: bool,
    seed: u64,
    shots: u64,
) -> Result<Value> {
    if shots == 0 {
        return Err(Error::InvalidArgument(
            "benchmarking needs at least one shot".into(),
        ));
    }
    let spec = OracleSpec::parse(marked_text, n)?;
    let mut policy = HybridPolicy::for_search_space(n);
    if known_m {
        policy.known_m = Some(spec.match_count());
    }

    let mut successes = 0u64;
    let mut total_calls = 0u64;
    let mut total_evals = 0u64;
    let mut branches: BTreeMap<&'static str, u64> = BTreeMap::new();
    for shot in 0..shots {
        let oracle = CountingOracle::new(spec.clone());
        let mut rng = shot_rng(seed, shot);
        let result = search(oracle, &policy, &mut rng, shot)?;
        if result.is_solution {
            successes += 1;
        }
        total_calls += result.oracle_calls;
        total_evals += result.classical_evals;
        *branches.entry(result.branch.label()).or_insert(0) += 1;
    }

    Ok(json!({
        "mode": if known_m { "known-m" } else { "unknown-m" },
        "n": n,
        "m": spec.match_count(),
        "seed": seed,
        "shots": shots,
        "successes": successes,
        "success_rate": successes as f64 / shots as f64,
        "mean_oracle_calls": total_calls as f64 / shots as f64,
        "mean_classical_evals": total_evals as f64 / shots as f64,
        "branches": branches,
    }))
}
