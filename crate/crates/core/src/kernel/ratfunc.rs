//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A reduced quotient `num / den`.
///
/// The canonical form has `gcd(num, den) = 1` and a denominator that is an
/// integer-primitive polynomial with positive leading coefficient, so two
/// equal rational functions are equal as values of this type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g)?.0, den.divrem(&g)?.0)
        };
        let (scale, den_int) = den.to_primitive_int();
        Ok(Self {
            num: num.scale(&scale.recip()),
            den: den_int.to_polynomial(),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Self::new(base.num.pow(e), base.den.pow(e))
    }

    /// Exact value at `x0`; fails if the reduced denominator vanishes there.
    pub fn eval(&self, x0: &Rational) -> Result<Rational> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::Pole(x0.to_string()));
        }
        Ok(self.num.eval(x0) / d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(num, &self.den * &o.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self.checked_div(o)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, other: RationalFunction) -> RationalFunction {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn normalizes_common_factor() {
        let f = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f, RationalFunction::from_poly(p(&[1, 1])));
    }

    #[test]
    fn zero_numerator_collapses() {
        let f = RationalFunction::new(Polynomial::zero(), p(&[3, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(f, RationalFunction::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(p(&[1]), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn cyclotomic_over_two() {
        let phi5 = p(&[1, 1, 1, 1, 1]);
        let q1 = p(&[-1, 1]);
        let f = RationalFunction::new(&q1 * &phi5, q1.scale(&int(2))).unwrap();
        assert_eq!(f, RationalFunction::from_poly(phi5.scale(&rat(1, 2))));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.eval(&int(1)).unwrap(), int(2));
        let g = RationalFunction::from_poly(p(&[1, 1, 1]));
        assert_eq!(g.eval(&int(1)).unwrap(), int(3));
        let h = RationalFunction::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert!(matches!(h.eval(&int(1)), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_denominator() {
        let f = RationalFunction::new(p(&[1]), p(&[-4, -2])).unwrap();
        assert_eq!(f.den(), &p(&[2, 1]));
        assert_eq!(f.num(), &Polynomial::constant(rat(-1, 2)));
    }
}
