//! Runs the semipart acceptance suite; see `tests/acceptance.rs`.

pub use semipart::acceptance::{run, run_all, CriterionResult};
