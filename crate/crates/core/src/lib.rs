//! Toolkit for dual-unitary Clifford circuits read as measurement-based computers.

pub mod bits;
pub mod clifford;
pub mod error;
pub mod lie;
pub mod pauli;
pub mod poly;
pub mod report;
pub mod schedule;
pub mod sim;
pub mod universality;

pub use error::{Error, Result};
