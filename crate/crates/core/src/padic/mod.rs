//! p-adic residues, Morita's Γ_p, Bernoulli numbers and polynomials, and
//! the classical congruences built from them.

pub mod classical;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernel::Rational;

pub use classical::{run_classical, ClassicalCheck, ClassicalId, ClassicalOutcome};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p^m`, refusing anything that does not fit comfortably in `u64`.
pub fn prime_power(p: u64, m: u32) -> Result<u64> {
    p.checked_pow(m)
        .filter(|&v| v < 1 << 62)
        .ok_or_else(|| Error::Precondition(format!("{p}^{m} is too large")))
}

/// A residue modulo `p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PadicInt {
    pub p: u64,
    pub m: u32,
    pub residue: u64,
}

impl PadicInt {
    pub fn new(p: u64, m: u32, value: i128) -> Result<Self> {
        let modulus = prime_power(p, m)? as i128;
        Ok(Self {
            p,
            m,
            residue: value.rem_euclid(modulus) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn one(p: u64, m: u32) -> Result<Self> {
        Self::new(p, m, 1)
    }

    fn same_ring(&self, o: &Self) {
        assert!(self.p == o.p && self.m == o.m, "mixed p-adic precisions");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        let m = self.modulus() as u128;
        Self {
            residue: ((self.residue as u128 + o.residue as u128) % m) as u64,
            ..*self
        }
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self {
            residue: (m - self.residue) % m,
            ..*self
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        let m = self.modulus() as u128;
        Self {
            residue: ((self.residue as u128 * o.residue as u128) % m) as u64,
            ..*self
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self {
            residue: 1 % self.modulus(),
            ..*self
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, m: u32) -> Self {
        let m = m.min(self.m);
        Self {
            m,
            residue: self.residue % self.p.pow(m),
            ..*self
        }
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.m)
    }
}

/// `v_p` of a nonzero integer.
pub fn valuation_int(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.abs();
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// `x mod p^m` for a `p`-integral rational.
pub fn reduce_mod_pk(x: &Rational, p: u64, m: u32) -> Result<PadicInt> {
    reduce_with_context(x, p, m, "value")
}

pub(crate) fn reduce_with_context(x: &Rational, p: u64, m: u32, context: &str) -> Result<PadicInt> {
    let modulus = BigInt::from(prime_power(p, m)?);
    let den = x.denom().mod_floor(&modulus);
    let g = den.extended_gcd(&modulus);
    if !g.gcd.is_one() {
        return Err(Error::NegativeValuation {
            p,
            context: context.to_string(),
        });
    }
    let r = (x.numer().mod_floor(&modulus) * g.x).mod_floor(&modulus);
    Ok(PadicInt {
        p,
        m,
        residue: r.to_u64().expect("residue below p^m"),
    })
}

/// Morita's Γ_p, with `x` lifted to its representative in `[1, p^m]`.
pub fn padic_gamma(x: &Rational, p: u64, m: u32) -> Result<PadicInt> {
    padic_gamma_with(x, p, m, Strategy::default())
}

pub fn padic_gamma_with(x: &Rational, p: u64, m: u32, strategy: Strategy) -> Result<PadicInt> {
    require_prime(p)?;
    let modulus = prime_power(p, m)?;
    let lifted = reduce_with_context(x, p, m, "Gamma_p argument")?.residue;
    let n = if lifted == 0 { modulus } else { lifted };
    Ok(gamma_at_integer(n, p, m, strategy))
}

/// `Γ_p(n) = (-1)^n prod_{0<j<n, p∤j} j (mod p^m)` for `n >= 1`.
pub fn gamma_at_integer(n: u64, p: u64, m: u32, strategy: Strategy) -> PadicInt {
    let modulus = p.pow(m);
    let prod = strategy.product_mod(1, n, p, modulus);
    let v = PadicInt {
        p,
        m,
        residue: prod,
    };
    if n % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// `B_0, ..., B_k` from `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
pub fn bernoulli_numbers(k: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(k + 1);
    b.push(Rational::one());
    for m in 1..=k {
        // sum_{j<m} C(m+1, j) B_j + (m+1) B_m = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli_number(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("nonempty")
}

/// `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_poly_eval(k: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(k);
    let mut binom = BigInt::one();
    let mut acc = Rational::zero();
    for (j, bj) in b.iter().enumerate() {
        acc += Rational::from_integer(binom.clone()) * bj * num_traits::pow(x.clone(), k - j);
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    acc
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::Precondition(
            "the Legendre symbol needs an odd prime".into(),
        ));
    }
    let r = BigInt::from(a).mod_floor(&BigInt::from(p));
    if r.is_zero() {
        return Ok(0);
    }
    let e = r.modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    Ok(if e.is_one() { 1 } else { -1 })
}

/// `(x)_k = x (x+1) ... (x+k-1)`.
pub fn rising_factorial(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}
