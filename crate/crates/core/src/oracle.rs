//! Search predicate over the list L = {0, …, N−1} and its quantum
//! applications.
//!
//! The predicate is represented extensionally as a sorted set of marked
//! indices, which keeps the match count M known, enumerable, and
//! serializable. Two superposed applications are provided: the bit oracle
//! XORs f(i) into a workspace qubit, the phase oracle negates marked
//! amplitudes. Every superposed application counts as one oracle call;
//! classical verification of a measured candidate is tracked separately so
//! query-count claims stay auditable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Search predicate f : {0, …, 2^n − 1} → {0, 1} given by its marked set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpec {
    n: u32,
    marked: Vec<usize>,
}

impl OracleSpec {
    /// Build a spec over an n-qubit search register from a list of marked
    /// indices. The list is sorted; duplicates and out-of-range indices are
    /// rejected. An empty list (M = 0) is allowed.
    pub fn new(n: u32, mut marked: Vec<usize>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidArgument(format!(
                "search register must have 1..=63 qubits, got {n}"
            )));
        }
        let size = 1usize << n;
        marked.sort_unstable();
        for (i, &m) in marked.iter().enumerate() {
            if m >= size {
                return Err(Error::IndexOutOfRange { index: m, size });
            }
            if i > 0 && marked[i - 1] == m {
                return Err(Error::InvalidArgument(format!(
                    "marked index {m} appears more than once"
                )));
            }
        }
        Ok(Self { n, marked })
    }

    /// Width of the search register in qubits.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Search-space size N = 2^n.
    pub fn search_space(&self) -> usize {
        1usize << self.n
    }

    /// Number of matches M.
    pub fn match_count(&self) -> usize {
        self.marked.len()
    }

    /// Marked indices in increasing order.
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    /// Evaluate f(i): true iff `i` is marked.
    pub fn evaluate(&self, i: usize) -> Result<bool> {
        if i >= self.search_space() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.search_space(),
            });
        }
        Ok(self.marked.binary_search(&i).is_ok())
    }

    /// Draw M distinct marked indices uniformly, deterministically per seed.
    pub fn random(n: u32, m: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidArgument(format!(
                "search register must have 1..=63 qubits, got {n}"
            )));
        }
        let size = 1usize << n;
        if m > size {
            return Err(Error::InvalidArgument(format!(
                "cannot mark {m} distinct indices in a space of {size}"
            )));
        }
        // Floyd's sampling: O(M) memory, no full permutation of the space.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen = BTreeSet::new();
        for j in (size - m)..size {
            let t = rng.gen_range(0..=j);
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        Self::new(n, chosen.into_iter().collect())
    }

    /// Parse a user-facing marked-set specification.
    ///
    /// Grammar (exact):
    /// - `list:<d>,<d>,...` — decimal indices, duplicates rejected
    /// - `range:<a>-<b>` — inclusive index range
    /// - `first:<M>` — indices 0..M−1
    /// - `count:<M>:seed:<S>` — M distinct indices drawn uniformly with seed S
    /// - `file:<path>` — one decimal index per line, `#` comments ignored
    ///
    /// # Example
    ///
    /// ```
    /// use qsearch_core::OracleSpec;
    ///
    /// let spec = OracleSpec::parse("list:1,5,7", 3).unwrap();
    /// assert_eq!(spec.marked(), &[1, 5, 7]);
    /// assert!(spec.evaluate(5).unwrap());
    /// assert!(OracleSpec::parse("list:1,5,9", 3).is_err());
    /// ```
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::MarkedSpecParse {
                pos: 0,
                reason: "empty specification".into(),
            });
        }
        if n == 0 || n > 63 {
            return Err(Error::InvalidArgument(format!(
                "search register must have 1..=63 qubits, got {n}"
            )));
        }
        let size = 1usize << n;
        let (head, tail) = match text.split_once(':') {
            Some(pair) => pair,
            None => {
                return Err(Error::MarkedSpecParse {
                    pos: 0,
                    reason: "expected one of list:, range:, first:, count:, file:".into(),
                })
            }
        };
        let tail_pos = head.len() + 1;
        match head {
            "list" => {
                let mut marked = Vec::new();
                let mut pos = tail_pos;
                if tail.is_empty() {
                    return Err(Error::MarkedSpecParse {
                        pos,
                        reason: "list: needs at least one index".into(),
                    });
                }
                for token in tail.split(',') {
                    let value = parse_number(token, pos)?;
                    if marked.contains(&value) {
                        return Err(Error::MarkedSpecParse {
                            pos,
                            reason: format!("duplicate index {value}"),
                        });
                    }
                    marked.push(value);
                    pos += token.len() + 1;
                }
                Self::new(n, marked)
            }
            "range" => {
                let (a_txt, b_txt) = tail.split_once('-').ok_or(Error::MarkedSpecParse {
                    pos: tail_pos,
                    reason: "range: expects <a>-<b>".into(),
                })?;
                let a = parse_number(a_txt, tail_pos)?;
                let b = parse_number(b_txt, tail_pos + a_txt.len() + 1)?;
                if a > b {
                    return Err(Error::MarkedSpecParse {
                        pos: tail_pos,
                        reason: format!("range start {a} exceeds end {b}"),
                    });
                }
                // Bounds before materializing: a huge end index must not
                // allocate.
                if b >= size {
                    return Err(Error::IndexOutOfRange { index: b, size });
                }
                Self::new(n, (a..=b).collect())
            }
            "first" => {
                let m = parse_number(tail, tail_pos)?;
                if m > size {
                    return Err(Error::IndexOutOfRange { index: m, size });
                }
                Self::new(n, (0..m).collect())
            }
            "count" => {
                let mut parts = tail.splitn(3, ':');
                let m_txt = parts.next().unwrap_or("");
                let seed_kw = parts.next().unwrap_or("");
                let seed_txt = parts.next().unwrap_or("");
                let m = parse_number(m_txt, tail_pos)?;
                if seed_kw != "seed" {
                    return Err(Error::MarkedSpecParse {
                        pos: tail_pos + m_txt.len() + 1,
                        reason: "count: expects count:<M>:seed:<S>".into(),
                    });
                }
                let seed_pos = tail_pos + m_txt.len() + 1 + seed_kw.len() + 1;
                let seed = seed_txt.parse::<u64>().map_err(|_| Error::MarkedSpecParse {
                    pos: seed_pos,
                    reason: format!("expected a decimal seed, got {seed_txt:?}"),
                })?;
                Self::random(n, m, seed)
            }
            "file" => {
                let body = std::fs::read_to_string(tail)?;
                let mut marked = Vec::new();
                for line in body.lines() {
                    let entry = line.trim();
                    if entry.is_empty() || entry.starts_with('#') {
                        continue;
                    }
                    let value = entry.parse::<usize>().map_err(|_| Error::MarkedSpecParse {
                        pos: tail_pos,
                        reason: format!("bad index line {entry:?} in {tail}"),
                    })?;
                    if marked.contains(&value) {
                        return Err(Error::MarkedSpecParse {
                            pos: tail_pos,
                            reason: format!("duplicate index {value} in {tail}"),
                        });
                    }
                    marked.push(value);
                }
                Self::new(n, marked)
            }
            other => Err(Error::MarkedSpecParse {
                pos: 0,
                reason: format!(
                    "unknown specification kind {other:?}; expected list, range, first, count, or file"
                ),
            }),
        }
    }
}

fn parse_number(token: &str, pos: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::MarkedSpecParse {
        pos,
        reason: format!("expected a decimal index, got {token:?}"),
    })
}

/// An [`OracleSpec`] plus query accounting.
///
/// Superposed applications (bit or phase) each bump `calls` by exactly one,
/// matching the quantum query-complexity convention. Classical verification
/// of a measured candidate bumps `classical_evals` instead. One
/// `CountingOracle` belongs to one search run.
#[derive(Clone, Debug)]
pub struct CountingOracle {
    spec: OracleSpec,
    calls: u64,
    classical_evals: u64,
}

impl CountingOracle {
    pub fn new(spec: OracleSpec) -> Self {
        Self {
            spec,
            calls: 0,
            classical_evals: 0,
        }
    }

    pub fn spec(&self) -> &OracleSpec {
        &self.spec
    }

    /// Superposed oracle applications so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Classical f evaluations spent on verifying measured candidates.
    pub fn classical_evals(&self) -> u64 {
        self.classical_evals
    }

    /// Classically check a measured candidate, counting the evaluation.
    pub fn verify(&mut self, i: usize) -> Result<bool> {
        self.classical_evals += 1;
        self.spec.evaluate(i)
    }

    /// Bit oracle: XOR f(prefix) into the `target` workspace qubit,
    /// simultaneously for every basis state.
    ///
    /// `target` must lie outside the search register (index ≥ n). Counts as
    /// one oracle call. The first-n marginal is untouched: only workspace
    /// bits inside each prefix block move.
    pub fn apply_bit_oracle(&mut self, state: &mut StateVector, target: u32) -> Result<()> {
        let n = self.spec.n();
        let width = state.num_qubits();
        if width < n {
            return Err(Error::InvalidArgument(format!(
                "state has {width} qubits but the search register needs {n}"
            )));
        }
        if target < n {
            return Err(Error::InvalidArgument(format!(
                "bit-oracle target {target} lies inside the {n}-qubit search register"
            )));
        }
        if target >= width {
            return Err(Error::QubitOutOfRange {
                qubit: target,
                width,
            });
        }
        self.calls += 1;
        let block = 1usize << (width - n);
        let target_mask = 1usize << (width - 1 - target);
        // Only marked prefix blocks change; each is a contiguous run of
        // workspace patterns under the MSB-first layout.
        for &i in self.spec.marked() {
            let start = i * block;
            for k in start..start + block {
                if k & target_mask == 0 {
                    state.swap_amplitudes(k, k | target_mask);
                }
            }
        }
        Ok(())
    }

    /// Phase oracle: negate the amplitude of every basis state whose first-n
    /// prefix is marked. Counts as one oracle call and preserves every
    /// |amplitude|².
    pub fn apply_phase_oracle(&mut self, state: &mut StateVector) -> Result<()> {
        let n = self.spec.n();
        let width = state.num_qubits();
        if width < n {
            return Err(Error::InvalidArgument(format!(
                "state has {width} qubits but the search register needs {n}"
            )));
        }
        self.calls += 1;
        let block = 1usize << (width - n);
        for &i in self.spec.marked() {
            let start = i * block;
            for k in start..start + block {
                state.negate_amplitude(k);
            }
        }
        Ok(())
    }
}
