//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::rational::{denominator_lcm, Rational};
use crate::error::{Error, Result};

/// Coefficients are indexed by exponent; the leading coefficient is nonzero
/// and the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Division with remainder: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = lead.recip();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let c = top * &inv;
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Clears denominators: `self = scale * z` with `z` a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn to_primitive_int(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero());
        }
        let l = denominator_lcm(&self.coeffs);
        let lr = Rational::from_integer(l.clone());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lr).to_integer()).collect();
        let (content, prim) = IntPoly::from_coeffs(ints).primitive();
        (Rational::new(content, l), prim)
    }

    /// Monic greatest common divisor, computed with a primitive
    /// pseudo-remainder sequence over the integers.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        let (_, mut a) = self.to_primitive_int();
        let (_, mut b) = other.to_primitive_int();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive().1 };
        }
        Ok(a.to_polynomial().monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*m = g` and `g`
    /// monic (or zero when both inputs are zero).
    pub fn ext_gcd(&self, m: &Self) -> Result<(Self, Self, Self)> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.clone(), m.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = r0.leading().expect("nonzero gcd").recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Number of times `factor` divides `self` exactly (`None` for zero).
    pub fn valuation(&self, factor: &Self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Ok(None);
        }
        let mut cur = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = cur.divrem(factor)?;
            if !r.is_zero() {
                return Ok(Some(v));
            }
            cur = q;
            v += 1;
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
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
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, other: Polynomial) -> Polynomial {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
