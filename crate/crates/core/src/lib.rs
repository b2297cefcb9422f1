//! Partitions into semiprimes: exact counts, saddle-point and closed-form
//! asymptotics, and numerical checks of the circle-method machinery behind them.

pub mod acceptance;
pub mod asymptotics;
pub mod circle;
pub mod cli;
pub mod error;
pub mod partitions;
pub mod saddle;
pub mod sieve;
pub mod special;
pub mod weyl;

mod numeric;

pub use error::{Error, Result};
