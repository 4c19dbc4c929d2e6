//! Seeded sampled experiments: prepare a search circuit, draw shots from
//! its measurement marginal, verify each candidate, and report empirical
//! against predicted success.

use serde_json::{json, Value};

use qsearch_core::closed_form::{p_grover, p_success_iterated, p_success_once};
use qsearch_core::seeds::shot_rng;
use qsearch_core::{
    grover, younes_iterated, younes_once, CountingOracle, Error, MarginalSampler, OracleSpec,
    Result,
};

/// Circuit family selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Younes,
    YounesIter,
    Grover,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Younes => "younes",
            Algorithm::YounesIter => "younes-iter",
            Algorithm::Grover => "grover",
        }
    }
}

/// Run `shots` independent prepare-measure-verify cycles.
///
/// The preparation is deterministic, so one prepared state serves every
/// shot; each shot draws from the measurement marginal on its own random
/// stream derived from (seed, shot index), making the report independent
/// of shot ordering. Reported oracle calls are the per-cycle count times
/// the number of shots, since hardware would re-prepare per shot.
pub fn run_simulate(
    algorithm: Algorithm,
    n: u32,
    marked_text: &str,
    q: u32,
    seed: u64,
    shots: u64,
) -> Result<Value> {
    if shots == 0 {
        return Err(Error::InvalidArgument(
            "sampling needs at least one shot".into(),
        ));
    }
    let spec = OracleSpec::parse(marked_text, n)?;
    let size = spec.search_space();
    let matches = spec.match_count();
    let oracle = CountingOracle::new(spec.clone());

    let (prepared, q_reported, predicted) = match algorithm {
        Algorithm::Younes => {
            if q != 1 {
                return Err(Error::InvalidArgument(
                    "the one-shot circuit has a fixed depth; --q applies to younes-iter and grover"
                        .into(),
                ));
            }
            (younes_once(oracle)?, 1, p_success_once(size, matches)?)
        }
        Algorithm::YounesIter => (
            younes_iterated(oracle, q)?,
            q,
            p_success_iterated(size, matches, q)?,
        ),
        Algorithm::Grover => {
            let predicted = if matches == 0 {
                // No amplitude ever moves, so no draw can verify.
                0.0
            } else {
                p_grover(size, matches, q)?
            };
            (grover(oracle, q)?, q, predicted)
        }
    };

    let sampler = MarginalSampler::new(&prepared.state, n)?;
    let mut successes = 0u64;
    for shot in 0..shots {
        let mut rng = shot_rng(seed, shot);
        let index = sampler.draw(&mut rng);
        if spec.evaluate(index)? {
            successes += 1;
        }
    }

    Ok(json!({
        "algorithm": algorithm.label(),
        "n": n,
        "m": matches,
        "q": q_reported,
        "seed": seed,
        "shots": shots,
        "successes": successes,
        "success_rate": successes as f64 / shots as f64,
        "predicted": predicted,
        "oracle_calls": prepared.oracle.calls() * shots,
    }))
}
