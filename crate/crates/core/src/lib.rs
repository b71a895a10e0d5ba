//! Quantum SL3 trace maps, cluster mutations and their compatibility with flips.

pub mod balance;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod mutation;
pub mod qtorus;
pub mod quiver;
pub mod surface;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
