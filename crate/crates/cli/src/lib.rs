//! Library backing the `qsearch` binary: each subcommand's work is a plain
//! function over the core crate, so the experiment logic is testable
//! without spawning processes.

pub mod hybrid_bench;
pub mod output;
pub mod predict;
pub mod simulate;
pub mod sweep;
pub mod table;
