//! Symbolic q-series checks.

pub mod bridge;
pub mod corollary;
pub mod crt;
pub mod lemmas;
pub mod lhospital;
pub mod param;
pub mod terms;
pub mod theorem;
pub mod watson;

pub use param::{ParamValue, Sampler, XMono};
pub use theorem::{check_theorem_general, lhs_general, rhs_general, TheoremInstance, Truncation};
