//! Dense polynomials with arbitrary-precision integer coefficients.
//!
//! This is the working representation on hot paths: long products of
//! binomials and exact division by monic cyclotomic polynomials never leave
//! the integers, so no per-operation rational normalization is paid.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// In-place multiplication by the binomial `b - a*x^s` (`s >= 1`).
    pub fn mul_binomial(&mut self, b: &BigInt, a: &BigInt, s: usize) {
        debug_assert!(s >= 1);
        if self.is_zero() {
            return;
        }
        let n = self.coeffs.len();
        self.coeffs.resize(n + s, BigInt::zero());
        let b_is_one = b.is_one();
        let a_is_one = a.is_one();
        for i in (0..n + s).rev() {
            let mut v = if i < n {
                if b_is_one {
                    std::mem::take(&mut self.coeffs[i])
                } else {
                    &self.coeffs[i] * b
                }
            } else {
                BigInt::zero()
            };
            if i >= s {
                let lower = &self.coeffs[i - s];
                if !lower.is_zero() {
                    if a_is_one {
                        v -= lower;
                    } else {
                        v -= lower * a;
                    }
                }
            }
            self.coeffs[i] = v;
        }
        self.trim();
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`; the division must be exact.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient, and the signed
    /// content that was removed.
    pub fn primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        (g.clone(), self.div_exact_scalar(&g))
    }

    /// Division by a divisor whose leading coefficient is `±1`.
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        assert!(
            lead.abs().is_one(),
            "divrem_monic needs a unit leading coefficient"
        );
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let c = if lead.is_one() { top } else { -top };
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient if `divisor` (unit leading coefficient) divides `self` exactly.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            let scaled = rem.scale(lead);
            let sub = divisor.scale(&top).shift(dr - dd);
            rem = scaled.sub(&sub);
        }
        rem
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_multiplication_matches_dense() {
        let mut p = IntPoly::from_i64s(&[1, 2, 3]);
        p.mul_binomial(&BigInt::from(2), &BigInt::from(5), 2);
        let dense = IntPoly::from_i64s(&[1, 2, 3]).mul(&IntPoly::from_i64s(&[2, 0, -5]));
        assert_eq!(p, dense);
    }

    #[test]
    fn monic_division_round_trip() {
        let a = IntPoly::from_i64s(&[3, -1, 4, 1, -5, 9]);
        let d = IntPoly::from_i64s(&[1, 1, 1]);
        let (q, r) = a.divrem_monic(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        let (c, p) = IntPoly::from_i64s(&[6, -4, -2]).primitive();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(p, IntPoly::from_i64s(&[-3, 2, 1]));
    }
}
