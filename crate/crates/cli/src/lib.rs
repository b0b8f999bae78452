//! Command-line machinery for the fuzzpair models: parameter sweeps,
//! threshold bisection, oracle verification suites, and deterministic
//! CSV/JSON output.

pub mod emit;
mod error;
pub mod grid;
pub mod sweep;
pub mod threshold;
pub mod verify;

pub use error::CliError;
