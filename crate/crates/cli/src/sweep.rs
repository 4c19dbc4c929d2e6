//! Figure-data sweeps: success-probability curves as a function of the
//! match ratio M/N, written as CSV.
//!
//! The curves are closed forms evaluated at real-valued ratios (not only at
//! integer match counts), sampled uniformly on (0, 1]. Values carry nine
//! significant digits; rows end with LF.

use qsearch_core::closed_form::{p_grover_ratio, p_success_iterated_ratio, p_success_once_ratio};
use qsearch_core::{Error, Result};

use crate::output::sig9;

/// Which comparison the CSV columns trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// One-shot circuit vs first Grover iteration vs classical guess.
    OneShotComparison,
    /// The iterated circuit at depths 1..=6.
    IteratedFamily,
    /// Grover vs the iterated circuit, both at depths 1..=5.
    GroverComparison,
}

impl Figure {
    /// Map the figure numbers used on the command line.
    pub fn from_number(number: u8) -> Result<Self> {
        match number {
            5 => Ok(Figure::OneShotComparison),
            7 => Ok(Figure::IteratedFamily),
            8 => Ok(Figure::GroverComparison),
            other => Err(Error::InvalidArgument(format!(
                "no sweep is defined for figure {other}; choose 5, 7, or 8"
            ))),
        }
    }
}

/// Build the CSV body for a figure with `points` ratio samples.
pub fn sweep_csv(figure: Figure, points: usize) -> Result<String> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!(
            "a sweep needs at least 2 points, got {points}"
        )));
    }
    let mut out = String::new();
    match figure {
        Figure::OneShotComparison => {
            out.push_str("ratio,p_younes,p_grover_q1,p_classical\n");
            for k in 1..=points {
                let x = k as f64 / points as f64;
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    sig9(x),
                    sig9(p_success_once_ratio(x)),
                    sig9(p_grover_ratio(x, 1)),
                    sig9(x)
                ));
            }
        }
        Figure::IteratedFamily => {
            out.push_str(
                "ratio,p_younes_q1,p_younes_q2,p_younes_q3,p_younes_q4,p_younes_q5,p_younes_q6\n",
            );
            for k in 1..=points {
                let x = k as f64 / points as f64;
                out.push_str(&sig9(x));
                for q in 1..=6 {
                    out.push(',');
                    out.push_str(&sig9(p_success_iterated_ratio(x, q)));
                }
                out.push('\n');
            }
        }
        Figure::GroverComparison => {
            out.push_str("ratio");
            for q in 1..=5 {
                out.push_str(&format!(",p_grover_q{q}"));
            }
            for q in 1..=5 {
                out.push_str(&format!(",p_younes_q{q}"));
            }
            out.push('\n');
            for k in 1..=points {
                let x = k as f64 / points as f64;
                out.push_str(&sig9(x));
                for q in 1..=5 {
                    out.push(',');
                    out.push_str(&sig9(p_grover_ratio(x, q)));
                }
                for q in 1..=5 {
                    out.push(',');
                    out.push_str(&sig9(p_success_iterated_ratio(x, q)));
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}
