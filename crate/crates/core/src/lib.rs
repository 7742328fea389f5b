//! Exact verification of q-supercongruences modulo cyclotomic polynomial
//! powers, together with their p-adic specializations.

pub mod cyclo;
pub mod error;
pub mod exec;
pub mod kernel;
pub mod padic;
pub mod qseries;
pub mod suite;

pub use error::{Error, Result};
