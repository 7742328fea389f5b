use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::rational::{pow_i, Rational};

/// `coeff * x^exp` in the working variable `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMono {
    pub coeff: Rational,
    pub exp: i64,
}

impl XMono {
    pub fn new(coeff: Rational, exp: i64) -> Self {
        Self { coeff, exp }
    }

    /// `x^exp`.
    pub fn x(exp: i64) -> Self {
        Self::new(Rational::one(), exp)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, 0)
    }

    pub fn recip(&self) -> Self {
        Self::new(self.coeff.recip(), -self.exp)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(pow_i(&self.coeff, e), self.exp * e)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.coeff * pow_i(x, self.exp)
    }
}

impl Mul for &XMono {
    type Output = XMono;
    fn mul(self, o: &XMono) -> XMono {
        XMono::new(&self.coeff * &o.coeff, self.exp + o.exp)
    }
}

impl Div for &XMono {
    type Output = XMono;
    fn div(self, o: &XMono) -> XMono {
        XMono::new(&self.coeff / &o.coeff, self.exp - o.exp)
    }
}

impl fmt::Display for XMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_one(), self.exp) {
            (_, 0) => write!(f, "{}", self.coeff),
            (true, e) => write!(f, "x^{e}"),
            (false, e) => write!(f, "({})*x^{e}", self.coeff),
        }
    }
}

/// A parameter `u * q^(s/den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamValue {
    #[serde(serialize_with = "ser_rational")]
    pub u: Rational,
    pub s: i64,
    pub den: u32,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ParamValue {
    pub fn new(u: Rational, s: i64, den: u32) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::DegenerateSample(
                "parameter coefficient is zero".into(),
            ));
        }
        if den == 0 {
            return Err(Error::Precondition(
                "exponent denominator must be positive".into(),
            ));
        }
        Ok(Self { u, s, den })
    }

    pub fn rational(u: Rational) -> Self {
        Self::new(u, 0, 1).expect("nonzero rational parameter")
    }

    /// `q^(s/den)`.
    pub fn q_power(s: i64, den: u32) -> Self {
        Self::new(Rational::one(), s, den).unwrap()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// The value after substituting `q = x^subst`.
    pub fn to_x(&self, subst: u32) -> Result<XMono> {
        let num = self.s * subst as i64;
        if num % self.den as i64 != 0 {
            return Err(Error::Precondition(format!(
                "q^({}/{}) is not a power of x under q = x^{subst}",
                self.s, self.den
            )));
        }
        Ok(XMono::new(self.u.clone(), num / self.den as i64))
    }

    /// Smallest substitution exponent that makes this parameter a monomial.
    pub fn required_subst(&self) -> u32 {
        let g = self.s.unsigned_abs().gcd(&(self.den as u64)).max(1);
        (self.den as u64 / g) as u32
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match (self.s, self.den) {
            (0, _) => String::new(),
            (s, 1) => format!("q^{s}"),
            (s, d) => format!("q^({s}/{d})"),
        };
        match (self.u.is_one(), q.is_empty()) {
            (_, true) => write!(f, "{}", self.u),
            (true, false) => write!(f, "{q}"),
            (false, false) => write!(f, "{}*{q}", self.u),
        }
    }
}

/// Least common substitution exponent for a set of parameters.
pub fn common_subst<'a>(params: impl IntoIterator<Item = &'a ParamValue>) -> u32 {
    params
        .into_iter()
        .fold(1u32, |acc, p| acc.lcm(&p.required_subst()))
}

/// Seeded source of parameter samples.
///
/// Rationals come from `±a/b` with `1 <= a, b <= 9`, never `0` or `±1`, so
/// no binomial built from a sampled parameter can vanish at a root of unity.
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// 64-bit FNV-1a, used to derive per-check seeds.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl Sampler {
    pub fn new(seed: u64, tag: &str) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed ^ fnv1a(tag.as_bytes())),
        }
    }

    pub fn rational(&mut self) -> Rational {
        loop {
            let a: i64 = self.rng.gen_range(1..=9);
            let b: i64 = self.rng.gen_range(1..=9);
            let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
            let r = Rational::new((sign * a).into(), b.into());
            if !r.abs().is_one() {
                return r;
            }
        }
    }

    /// A monomial parameter `u * q^s` with `s` in `-2..=2`.
    pub fn param(&mut self) -> ParamValue {
        let u = self.rational();
        let s = self.rng.gen_range(-2..=2);
        ParamValue::new(u, s, 1).unwrap()
    }

    /// A purely rational parameter.
    pub fn rational_param(&mut self) -> ParamValue {
        ParamValue::rational(self.rational())
    }

    /// A rational evaluation point for the working variable, away from
    /// `0`, `±1`.
    pub fn point(&mut self) -> Rational {
        self.rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    #[test]
    fn sampler_is_deterministic_and_avoids_units() {
        let mut a = Sampler::new(42, "theorem_general/n=5");
        let mut b = Sampler::new(42, "theorem_general/n=5");
        for _ in 0..50 {
            let x = a.param();
            assert_eq!(x, b.param());
            assert!(!x.u.is_zero() && !x.u.abs().is_one());
        }
        let mut c = Sampler::new(42, "theorem_general/n=8");
        let first: Vec<_> = (0..5).map(|_| c.param()).collect();
        let mut d = Sampler::new(42, "theorem_general/n=5");
        let other: Vec<_> = (0..5).map(|_| d.param()).collect();
        assert_ne!(first, other);
    }

    #[test]
    fn half_powers_need_substitution() {
        let e = ParamValue::q_power(5, 2);
        assert!(e.to_x(1).is_err());
        assert_eq!(e.to_x(2).unwrap(), XMono::x(5));
        assert_eq!(e.to_x(4).unwrap(), XMono::x(10));
        assert_eq!(e.required_subst(), 2);
        assert_eq!(common_subst([&ParamValue::q_power(4, 1), &e]), 2);
        assert_eq!(
            ParamValue::new(rat(3, 2), 1, 1).unwrap().to_string(),
            "3/2*q^1"
        );
    }
}
