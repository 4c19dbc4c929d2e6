//! Closed-form predictions without running any circuit.

use serde_json::{json, Value};

use qsearch_core::closed_form::{
    average_p_classical, average_p_once, p_grover, p_success_iterated, p_success_once,
};
use qsearch_core::{Error, Result};

/// Prediction model selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Younes,
    YounesIter,
    Grover,
    Classical,
    Average,
}

impl Model {
    pub fn label(self) -> &'static str {
        match self {
            Model::Younes => "younes",
            Model::YounesIter => "younes-iter",
            Model::Grover => "grover",
            Model::Classical => "classical",
            Model::Average => "average",
        }
    }
}

fn require_m(m: Option<usize>, model: Model) -> Result<usize> {
    m.ok_or_else(|| {
        Error::InvalidArgument(format!("--m is required for the {} model", model.label()))
    })
}

/// Evaluate one prediction.
///
/// `younes` ignores q (fixed depth 1); `younes-iter` and `grover` default q
/// to 1 when the flag is omitted. The `average` model reports the direct
/// black-box summation and, because two closed-form candidates circulate
/// for it, also prints both so the mismatch of the power form stays
/// visible: the summation equals 1 − 1/(2N) and does not fit 1 − 1/2^N.
pub fn run_predict(model: Model, n: u32, m: Option<usize>, q: Option<u32>) -> Result<Value> {
    let size = 1usize
        .checked_shl(n)
        .filter(|_| n <= 63)
        .ok_or_else(|| Error::InvalidArgument(format!("register width {n} is out of range")))?;
    let base = |predicted: f64, m: Option<usize>, q: Option<u32>| {
        json!({
            "model": model.label(),
            "n": n,
            "m": m,
            "q": q,
            "predicted": predicted,
        })
    };
    match model {
        Model::Younes => {
            let m = require_m(m, model)?;
            Ok(base(p_success_once(size, m)?, Some(m), Some(1)))
        }
        Model::YounesIter => {
            let m = require_m(m, model)?;
            let q = q.unwrap_or(1);
            Ok(base(p_success_iterated(size, m, q)?, Some(m), Some(q)))
        }
        Model::Grover => {
            let m = require_m(m, model)?;
            let q = q.unwrap_or(1);
            Ok(base(p_grover(size, m, q)?, Some(m), Some(q)))
        }
        Model::Classical => {
            let m = require_m(m, model)?;
            if m > size {
                return Err(Error::InvalidArgument(format!(
                    "match count {m} exceeds search-space size {size}"
                )));
            }
            Ok(base(m as f64 / size as f64, Some(m), None))
        }
        Model::Average => {
            let summation = average_p_once(size)?;
            let mut report = base(summation, None, None);
            report["half_reciprocal_form"] = json!(1.0 - 1.0 / (2.0 * size as f64));
            report["power_form"] = json!(1.0 - 0.5f64.powf(size as f64));
            report["classical_average"] = json!(average_p_classical(size)?);
            report["note"] = json!(
                "predicted is the direct black-box summation; it equals the half-reciprocal \
                 form 1 - 1/(2N) and does not fit the power form 1 - 1/2^N"
            );
            Ok(report)
        }
    }
}
