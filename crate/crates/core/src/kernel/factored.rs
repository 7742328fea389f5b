//! Rational functions whose denominators are products of binomials.
//!
//! Every summand of a truncated q-hypergeometric sum is, up to a constant
//! and a power of `x`, a product of binomials `1 - u*x^s` raised to integer
//! powers. [`Product`] keeps such a term fully factored so numerator and
//! denominator factors cancel symbolically. [`Fraction`] is a sum of those
//! terms: an expanded integer numerator over a denominator that stays a
//! multiset of binomials. Sums only ever take the least common multiple of
//! the binomial multisets, so no polynomial gcd is needed on this path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::{pow_i, Rational};
use crate::error::{Error, Result};

/// The binomial `1 - coeff * x^exp` with `exp >= 1` and `coeff != 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub exp: u32,
    pub coeff: Rational,
}

impl Binomial {
    pub fn new(coeff: Rational, exp: u32) -> Self {
        assert!(exp >= 1 && !coeff.is_zero());
        Self { exp, coeff }
    }

    /// Integer form `(b, a)` with `1 - (a/b) x^s = (b - a x^s) / b`.
    fn integer_parts(&self) -> (BigInt, BigInt) {
        (self.coeff.denom().clone(), self.coeff.numer().clone())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        &Polynomial::one() - &Polynomial::monomial(self.coeff.clone(), self.exp as usize)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        Rational::one() - &self.coeff * pow_i(x, self.exp as i64)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.is_one() {
            String::new()
        } else {
            format!("({})*", self.coeff)
        };
        write!(f, "(1 - {c}x^{})", self.exp)
    }
}

/// `scale * x^shift * prod (1 - c x^e)^power`, with numerator and
/// denominator factors cancelled against each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    scale: Rational,
    shift: i64,
    factors: BTreeMap<Binomial, i32>,
}

impl Default for Product {
    fn default() -> Self {
        Self::one()
    }
}

impl Product {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            scale: c,
            shift: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn monomial(c: Rational, shift: i64) -> Self {
        let mut p = Self::constant(c);
        if !p.scale.is_zero() {
            p.shift = shift;
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Binomial, i32)> {
        self.factors.iter().map(|(b, &p)| (b, p))
    }

    fn make_zero(&mut self) {
        self.scale = Rational::zero();
        self.shift = 0;
        self.factors.clear();
    }

    /// Multiplies by `(1 - coeff * x^exp)^power` for any integer `exp`.
    ///
    /// A factor that is identically zero is an error when it lands in the
    /// denominator (`power < 0`) and zeroes the product otherwise.
    pub fn mul_binomial(&mut self, coeff: &Rational, exp: i64, power: i32) -> Result<()> {
        if power == 0 || coeff.is_zero() {
            return Ok(());
        }
        if exp == 0 {
            let c = Rational::one() - coeff;
            if c.is_zero() {
                if power < 0 {
                    return Err(Error::ZeroFactor(format!("1 - {coeff}")));
                }
                self.make_zero();
                return Ok(());
            }
            if !self.is_zero() {
                self.scale *= pow_i(&c, power as i64);
            }
            return Ok(());
        }
        if self.is_zero() {
            return Ok(());
        }
        let (coeff, exp) = if exp < 0 {
            // 1 - c x^-e = -c x^-e (1 - c^-1 x^e)
            let neg_c = -coeff.clone();
            self.scale *= pow_i(&neg_c, power as i64);
            self.shift += exp * power as i64;
            (coeff.recip(), (-exp) as u32)
        } else {
            (coeff.clone(), exp as u32)
        };
        let key = Binomial::new(coeff, exp);
        let entry = self.factors.entry(key).or_insert(0);
        *entry += power;
        if *entry == 0 {
            self.factors.retain(|_, p| *p != 0);
        }
        Ok(())
    }

    pub fn mul_constant(&mut self, c: &Rational) {
        if c.is_zero() {
            self.make_zero();
        } else if !self.is_zero() {
            self.scale *= c;
        }
    }

    pub fn mul_monomial(&mut self, c: &Rational, shift: i64) {
        self.mul_constant(c);
        if !self.is_zero() {
            self.shift += shift;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::constant(Rational::zero());
        }
        let mut out = self.clone();
        out.scale *= &other.scale;
        out.shift += other.shift;
        for (b, &p) in &other.factors {
            *out.factors.entry(b.clone()).or_insert(0) += p;
        }
        out.factors.retain(|_, p| *p != 0);
        out
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(if e == 0 { Self::one() } else { self.clone() });
        }
        Ok(Self {
            scale: pow_i(&self.scale, e as i64),
            shift: self.shift * e as i64,
            factors: self
                .factors
                .iter()
                .filter(|_| e != 0)
                .map(|(b, &p)| (b.clone(), p * e))
                .collect(),
        })
    }

    pub fn recip(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// Value at `x = 1` of the reduced form.
    ///
    /// `1 - x^s` contributes one factor `(1 - x)` times `[s]`, which tends
    /// to `s`; every other binomial is nonzero at 1.
    pub fn limit_at_one(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let mut order = 0i64;
        let mut value = self.scale.clone();
        for (b, &p) in &self.factors {
            if b.coeff.is_one() {
                order += p as i64;
                value *= pow_i(&Rational::from_integer(b.exp.into()), p as i64);
            } else {
                value *= pow_i(&(Rational::one() - &b.coeff), p as i64);
            }
        }
        match order.cmp(&0) {
            std::cmp::Ordering::Less => Err(Error::Pole("x = 1".into())),
            std::cmp::Ordering::Greater => Ok(Rational::zero()),
            std::cmp::Ordering::Equal => Ok(value),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut v = self.scale.clone();
        if v.is_zero() {
            return Ok(v);
        }
        if x.is_zero() && self.shift < 0 {
            return Err(Error::Pole(x.to_string()));
        }
        v *= pow_i(x, self.shift);
        for (b, &p) in &self.factors {
            let f = b.eval(x);
            if f.is_zero() {
                if p < 0 {
                    return Err(Error::Pole(x.to_string()));
                }
                return Ok(Rational::zero());
            }
            v *= pow_i(&f, p as i64);
        }
        Ok(v)
    }

    pub fn to_fraction(&self) -> Fraction {
        if self.is_zero() {
            return Fraction::zero();
        }
        let mut num = IntPoly::one();
        let mut scale = self.scale.clone();
        let mut den = BTreeMap::new();
        for (b, &p) in &self.factors {
            if p > 0 {
                let (bd, an) = b.integer_parts();
                for _ in 0..p {
                    num.mul_binomial(&bd, &an, b.exp as usize);
                }
                if !bd.is_one() {
                    scale /= Rational::from_integer(num_traits::pow(bd, p as usize));
                }
            } else {
                den.insert(b.clone(), p.unsigned_abs());
            }
        }
        Fraction::normalized(scale, self.shift, num, den)
    }
}

/// `scale * x^shift * num / prod (1 - c x^e)^m`.
///
/// Canonical form: `num` is primitive with positive leading coefficient and
/// a nonzero constant term; zero is the empty numerator with empty
/// denominator. Addition is order-independent in its result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    scale: Rational,
    shift: i64,
    num: IntPoly,
    den: BTreeMap<Binomial, u32>,
}

impl Default for Fraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Fraction {
    pub fn zero() -> Self {
        Self {
            scale: Rational::zero(),
            shift: 0,
            num: IntPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::normalized(c, 0, IntPoly::one(), BTreeMap::new())
    }

    pub fn from_int_poly(p: IntPoly) -> Self {
        Self::normalized(Rational::one(), 0, p, BTreeMap::new())
    }

    fn normalized(scale: Rational, shift: i64, num: IntPoly, den: BTreeMap<Binomial, u32>) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let (content, prim) = num.primitive();
        let low = prim.coeffs().iter().take_while(|c| c.is_zero()).count();
        let prim = if low > 0 {
            IntPoly::from_coeffs(prim.coeffs()[low..].to_vec())
        } else {
            prim
        };
        Self {
            scale: scale * Rational::from_integer(content),
            shift: shift + low as i64,
            num: prim,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Binomial, u32)> {
        self.den.iter().map(|(b, &m)| (b, m))
    }

    /// Denominator degree in `x` (not counting the monomial shift).
    pub fn denominator_degree(&self) -> u64 {
        self.den.iter().map(|(b, &m)| b.exp as u64 * m as u64).sum()
    }

    /// Numerator and scale after multiplying the denominator up to `target`.
    fn lifted(&self, target: &BTreeMap<Binomial, u32>) -> (Rational, IntPoly) {
        let mut num = self.num.clone();
        let mut scale = self.scale.clone();
        for (b, &m) in target {
            let have = self.den.get(b).copied().unwrap_or(0);
            let extra = m - have;
            if extra == 0 {
                continue;
            }
            let (bd, an) = b.integer_parts();
            for _ in 0..extra {
                num.mul_binomial(&bd, &an, b.exp as usize);
            }
            if !bd.is_one() {
                scale /= Rational::from_integer(num_traits::pow(bd, extra as usize));
            }
        }
        (scale, num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (b, &m) in &other.den {
            let e = den.entry(b.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let (s1, n1) = self.lifted(&den);
        let (s2, n2) = other.lifted(&den);
        let shift = self.shift.min(other.shift);
        let n1 = n1.shift((self.shift - shift) as usize);
        let n2 = n2.shift((other.shift - shift) as usize);
        // Write s1 = g*c1 and s2 = g*c2 with integer c1, c2.
        let l = s1.denom().lcm(s2.denom());
        let g_num = s1.numer().gcd(s2.numer());
        let c1 = (s1.numer() / &g_num) * (&l / s1.denom());
        let c2 = (s2.numer() / &g_num) * (&l / s2.denom());
        let num = n1.scale(&c1).add(&n2.scale(&c2));
        Self::normalized(Rational::new(g_num, l), shift, num, den)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scale = -out.scale;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (b, &m) in &other.den {
            *den.entry(b.clone()).or_insert(0) += m;
        }
        Self::normalized(
            &self.scale * &other.scale,
            self.shift + other.shift,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn mul_product(&self, p: &Product) -> Self {
        self.mul(&p.to_fraction())
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Fraction>) -> Fraction {
        items
            .into_iter()
            .fold(Fraction::zero(), |acc, f| acc.add(f))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let mut d = Rational::one();
        for (b, &m) in &self.den {
            d *= pow_i(&b.eval(x), m as i64);
        }
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(&self.scale * pow_i(x, self.shift) * self.num.eval(x) / d)
    }

    /// Expanded denominator as an integer polynomial `D` together with the
    /// constant `k` such that `prod (1 - c x^e)^m = D / k`.
    pub fn expanded_denominator(&self) -> (IntPoly, Rational) {
        let mut d = IntPoly::one();
        let mut k = Rational::one();
        for (b, &m) in &self.den {
            let (bd, an) = b.integer_parts();
            for _ in 0..m {
                d.mul_binomial(&bd, &an, b.exp as usize);
            }
            k *= Rational::from_integer(num_traits::pow(bd, m as usize));
        }
        (d, k)
    }

    /// Canonical reduced form; runs a full polynomial gcd, so meant for
    /// moderate degrees.
    pub fn to_rational_function(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let (d, k) = self.expanded_denominator();
        let mut num = self.num.to_polynomial().scale(&(&self.scale * k));
        let mut den = d.to_polynomial();
        if self.shift >= 0 {
            num = num.shift(self.shift as usize);
        } else {
            den = den.shift((-self.shift) as usize);
        }
        RationalFunction::new(num, den).expect("binomial products are nonzero")
    }

    /// Exact zero test of `self - other`.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn has_negative_scale(&self) -> bool {
        self.scale.is_negative()
    }
}

impl From<&Product> for Fraction {
    fn from(p: &Product) -> Self {
        p.to_fraction()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn sample_points() -> Vec<Rational> {
        vec![rat(2, 1), rat(-3, 2), rat(5, 7), rat(-1, 3)]
    }

    #[test]
    fn negative_exponents_normalize() {
        // 1 - x^-1 = -x^-1 (1 - x)
        let mut p = Product::one();
        p.mul_binomial(&int(1), -1, 1).unwrap();
        assert_eq!(p.shift(), -1);
        assert_eq!(p.scale(), &int(-1));
        for x in sample_points() {
            assert_eq!(p.eval(&x).unwrap(), Rational::one() - x.recip());
        }
    }

    #[test]
    fn zero_factor_in_denominator_is_rejected() {
        let mut p = Product::one();
        assert!(matches!(
            p.mul_binomial(&int(1), 0, -1),
            Err(Error::ZeroFactor(_))
        ));
        let mut z = Product::one();
        z.mul_binomial(&int(1), 0, 2).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn factors_cancel() {
        let mut p = Product::one();
        p.mul_binomial(&rat(3, 2), 4, 2).unwrap();
        p.mul_binomial(&rat(3, 2), 4, -2).unwrap();
        assert_eq!(p, Product::one());
    }

    #[test]
    fn limit_at_one_counts_vanishing_factors() {
        // (1 - x^6) / (1 - x^2) -> 3
        let mut p = Product::one();
        p.mul_binomial(&int(1), 6, 1).unwrap();
        p.mul_binomial(&int(1), 2, -1).unwrap();
        assert_eq!(p.limit_at_one().unwrap(), int(3));
        p.mul_binomial(&int(1), 1, -1).unwrap();
        assert!(p.limit_at_one().is_err());
    }

    #[test]
    fn fraction_sum_matches_pointwise_values() {
        let mut a = Product::constant(rat(2, 3));
        a.mul_binomial(&rat(5, 2), 3, -1).unwrap();
        a.mul_binomial(&int(1), 2, 2).unwrap();
        let mut b = Product::monomial(rat(-7, 5), -2);
        b.mul_binomial(&int(1), 2, -1).unwrap();
        b.mul_binomial(&rat(5, 2), 3, -2).unwrap();
        let s = a.to_fraction().add(&b.to_fraction());
        for x in sample_points() {
            assert_eq!(
                s.eval(&x).unwrap(),
                a.eval(&x).unwrap() + b.eval(&x).unwrap()
            );
        }
        let m = a.to_fraction().mul(&b.to_fraction());
        for x in sample_points() {
            assert_eq!(
                m.eval(&x).unwrap(),
                a.eval(&x).unwrap() * b.eval(&x).unwrap()
            );
        }
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn addition_is_order_independent() {
        let terms: Vec<Fraction> = (1..5)
            .map(|k| {
                let mut p = Product::monomial(rat(k, k + 2), k - 2);
                p.mul_binomial(&int(1), k, -(k as i32)).unwrap();
                p.mul_binomial(&rat(-2, 3), 2 * k, 1).unwrap();
                p.to_fraction()
            })
            .collect();
        let fwd = Fraction::sum(&terms);
        let rev = Fraction::sum(terms.iter().rev());
        assert_eq!(fwd, rev);
    }

    #[test]
    fn reduced_form_agrees_with_rational_function_path() {
        let mut p = Product::constant(int(3));
        p.mul_binomial(&int(1), 4, 1).unwrap();
        p.mul_binomial(&int(1), 2, -1).unwrap();
        let f = p.to_fraction().to_rational_function();
        assert_eq!(
            f,
            RationalFunction::from_poly(Polynomial::from_i64s(&[3, 0, 3]))
        );
    }
}
