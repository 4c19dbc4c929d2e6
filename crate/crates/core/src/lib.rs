//! Statevector simulation and closed-form prediction for quantum search
//! over multi-match oracles.
//!
//! The crate has three layers:
//!
//! - [`state`] and [`oracle`] — a dense MSB-first statevector register with
//!   the gates the search circuits need, plus an extensional search
//!   predicate applied as a bit oracle (workspace XOR) or phase oracle,
//!   with query accounting.
//! - [`algorithms`] — the executable circuits: the one-shot and iterated
//!   multi-match searches (one oracle call per iteration, one extra
//!   workspace qubit each, mean inversion over the whole register) and
//!   standard Grover iterations.
//! - [`closed_form`] and [`hybrid`] — analytic predictions for every curve
//!   the circuits trace, and the dispatcher that picks a circuit family
//!   from what is known about the match count.
//!
//! Simulated probabilities and the closed forms are held against each other
//! by the test suites; neither side is trusted alone.

pub mod algorithms;
pub mod closed_form;
pub mod error;
pub mod hybrid;
pub mod oracle;
pub mod seeds;
pub mod state;

pub use algorithms::{
    diffusion, grover, run_and_verify, younes_iterated, younes_once, Branch, PreparedSearchState,
    RunResult,
};
pub use error::{Error, Result};
pub use hybrid::{dispatch_known, grover_iteration_count, search, HybridPolicy};
pub use oracle::{CountingOracle, OracleSpec};
pub use state::{max_qubits, MarginalSampler, StateVector, DEFAULT_MAX_QUBITS};
