//! Single-iteration performance table: max, min, and black-box average of
//! the success probability over every match count, per register size.

use qsearch_core::closed_form::{average_p_once, match_count_weights, p_success_once};
use qsearch_core::{younes_once, CountingOracle, OracleSpec, Result};

/// How the per-M probabilities are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table1Method {
    /// Evaluate the one-shot closed form.
    ClosedForm,
    /// Run the full statevector circuit for every match count.
    Simulated,
}

#[derive(Clone, Copy, Debug)]
pub struct Table1Row {
    pub n: u32,
    pub max_p: f64,
    pub min_p: f64,
    pub avg_p: f64,
}

/// Rows for n = 2..=n_max.
///
/// Max and min range over M = 1..=N; the average weights every match count
/// by C(N,M)/2^N. The simulated route prepares one circuit per match count
/// (the probability depends on the marked set only through its size), so it
/// is capped at n_max = 8 to keep the sweep at desk scale.
pub fn table1_rows(n_max: u32, method: Table1Method) -> Result<Vec<Table1Row>> {
    if !(2..=12).contains(&n_max) {
        return Err(qsearch_core::Error::InvalidArgument(format!(
            "table rows cover n_max in 2..=12, got {n_max}"
        )));
    }
    if method == Table1Method::Simulated && n_max > 8 {
        return Err(qsearch_core::Error::InvalidArgument(format!(
            "simulated table rows are capped at n_max = 8, got {n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let size = 1usize << n;
        let per_match: Vec<f64> = match method {
            Table1Method::ClosedForm => (1..=size)
                .map(|m| p_success_once(size, m))
                .collect::<Result<_>>()?,
            Table1Method::Simulated => (1..=size)
                .map(|m| {
                    let oracle = CountingOracle::new(OracleSpec::new(n, (0..m).collect())?);
                    Ok(younes_once(oracle)?.success_probability())
                })
                .collect::<Result<_>>()?,
        };
        let max_p = per_match.iter().copied().fold(f64::MIN, f64::max);
        let min_p = per_match.iter().copied().fold(f64::MAX, f64::min);
        let avg_p = match method {
            Table1Method::ClosedForm => average_p_once(size)?,
            Table1Method::Simulated => {
                let weights = match_count_weights(size)?;
                per_match
                    .iter()
                    .enumerate()
                    .map(|(i, p)| weights[i + 1] * p)
                    .sum()
            }
        };
        rows.push(Table1Row {
            n,
            max_p,
            min_p,
            avg_p,
        });
    }
    Ok(rows)
}

/// CSV rendering with six decimal places per probability column.
pub fn render(rows: &[Table1Row]) -> String {
    let mut out = String::from("n,max_prob,min_prob,avg_prob\n");
    for row in rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6}\n",
            row.n, row.max_p, row.min_p, row.avg_p
        ));
    }
    out
}
