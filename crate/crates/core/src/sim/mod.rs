//! Dense simulation: resource states, adaptive measurement, symmetry and glider checks.

pub mod matchgate;
pub mod mbqc;
pub mod spt;
pub mod state;

pub use matchgate::{classify_glider, matchgate_class_check, GliderClass, MatchgateReport};
pub use state::StateVector;
