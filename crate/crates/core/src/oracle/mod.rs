//! Exact, desk-scale baselines used to validate the fast paths.

pub mod dense;
pub mod exact;
