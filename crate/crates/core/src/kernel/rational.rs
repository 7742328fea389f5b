//! Exact rationals.
//!
//! `num_rational::BigRational` already keeps values reduced with a positive
//! denominator, which is exactly the invariant we need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for any integer exponent; panics on `0^negative`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn is_unit_sign(x: &Rational) -> bool {
    x.is_integer() && x.numer().abs().is_one()
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    a.gcd(b)
}
