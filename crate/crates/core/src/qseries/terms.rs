//! Builders for factored summands: q-shifted factorials, q-integers and
//! monomials, all in the working variable `x`.

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernel::{Fraction, Product, Rational};

use super::param::XMono;

/// `(a; x^step)_k = prod_{j<k} (1 - a x^(step*j))` as a factored product.
pub fn q_pochhammer(a: &XMono, step: i64, k: u64) -> Result<Product> {
    let mut t = Term::new();
    t.poch(a, step, k, 1)?;
    Ok(t.finish())
}

/// Accumulates one summand as a factored product.
#[derive(Clone, Debug, Default)]
pub struct Term {
    p: Product,
}

impl Term {
    pub fn new() -> Self {
        Self { p: Product::one() }
    }

    pub fn from_product(p: Product) -> Self {
        Self { p }
    }

    /// Multiplies by `(a; x^step)_k ^ power`.
    pub fn poch(&mut self, a: &XMono, step: i64, k: u64, power: i32) -> Result<&mut Self> {
        for j in 0..k as i64 {
            self.p
                .mul_binomial(&a.coeff, a.exp + step * j, power)
                .map_err(|e| match e {
                    Error::ZeroFactor(_) => {
                        Error::ZeroFactor(format!("({a}; x^{step})_{k} vanishes at j = {j}"))
                    }
                    other => other,
                })?;
        }
        Ok(self)
    }

    /// Multiplies by `[m]_{x^base} ^ power`, where
    /// `[m]_Q = (1 - Q^m) / (1 - Q)` for every integer `m`.
    pub fn qint(&mut self, m: i64, base: i64, power: i32) -> Result<&mut Self> {
        self.p
            .mul_binomial(&Rational::from_integer(1.into()), m * base, power)
            .map_err(|_| Error::ZeroFactor(format!("[{m}] in a denominator")))?;
        self.p
            .mul_binomial(&Rational::from_integer(1.into()), base, -power)?;
        Ok(self)
    }

    /// Multiplies by `m ^ power`.
    pub fn mono(&mut self, m: &XMono, power: i64) -> &mut Self {
        let m = m.pow(power);
        self.p.mul_monomial(&m.coeff, m.exp);
        self
    }

    /// Multiplies by the binomial `1 - a`.
    pub fn one_minus(&mut self, a: &XMono, power: i32) -> Result<&mut Self> {
        self.p.mul_binomial(&a.coeff, a.exp, power)?;
        Ok(self)
    }

    pub fn constant(&mut self, c: &Rational) -> &mut Self {
        self.p.mul_constant(c);
        self
    }

    pub fn finish(&self) -> Product {
        self.p.clone()
    }
}

/// The working variable: `q = x^sub`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QVar {
    pub sub: i64,
}

impl QVar {
    pub fn new(sub: u32) -> Self {
        Self { sub: sub as i64 }
    }

    /// `q^k`.
    pub fn q(&self, k: i64) -> XMono {
        XMono::x(k * self.sub)
    }

    /// Exponent in `x` of the base `q^d`.
    pub fn step(&self, d: i64) -> i64 {
        d * self.sub
    }

    /// `(a_1, ..., a_s; q^d)_k / (b_1, ..., b_t; q^d)_k` appended to `t`.
    pub fn ratio<'a>(
        &self,
        t: &'a mut Term,
        top: &[XMono],
        bottom: &[XMono],
        d: i64,
        k: u64,
    ) -> Result<&'a mut Term> {
        for a in top {
            t.poch(a, self.step(d), k, 1)?;
        }
        for b in bottom {
            t.poch(b, self.step(d), k, -1)?;
        }
        Ok(t)
    }
}

/// Sum of factored summands, each expanded once.
pub fn sum_products(terms: &[Product], strategy: Strategy) -> Fraction {
    let parts: Vec<Fraction> = strategy.map(terms, |t| t.to_fraction());
    strategy.tree_sum(parts)
}
