//! Exact arithmetic substrate: rationals, polynomials, rational functions,
//! and factored binomial products.

pub mod factored;
pub mod intpoly;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use factored::{Binomial, Fraction, Product};
pub use intpoly::IntPoly;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{int, rat, Rational};
