//! The Chinese-remainder idempotents for the coprime moduli
//! `(1-aq^n)(a-q^n)` and `b-q^n`, and the closing polynomial identity
//! `(1-q^n)(1+a^2-a-aq^n) = (1-a)^2 + (1-aq^n)(a-q^n)`.
//!
//! `a` and `b` are rational samples and `q` is the polynomial variable.

use num_traits::{One, Zero};

use crate::cyclo::Verdict;
use crate::error::{Error, Result};
use crate::kernel::{Polynomial, Rational, RationalFunction};

fn q_pow(n: usize) -> Polynomial {
    Polynomial::monomial(Rational::one(), n)
}

fn c(x: &Rational) -> Polynomial {
    Polynomial::constant(x.clone())
}

/// `(1 - a q^n)(a - q^n)`.
pub fn m_a(n: usize, a: &Rational) -> Polynomial {
    let one = Polynomial::one();
    (&one - &(&c(a) * &q_pow(n))) * (&c(a) - &q_pow(n))
}

/// `b - q^n`.
pub fn m_b(n: usize, b: &Rational) -> Polynomial {
    &c(b) - &q_pow(n)
}

/// `(b - q^n)(ab - 1 - a^2 + a q^n) / ((a - b)(1 - ab))`.
pub fn idempotent_a(n: usize, a: &Rational, b: &Rational) -> Result<RationalFunction> {
    let k = denominator(a, b)?;
    let one = Rational::one();
    let inner = &c(&(a * b - &one - a * a)) + &(&c(a) * &q_pow(n));
    Ok(RationalFunction::from_poly(
        (m_b(n, b) * inner).scale(&k.recip()),
    ))
}

/// `(1 - a q^n)(a - q^n) / ((a - b)(1 - ab))`.
pub fn idempotent_b(n: usize, a: &Rational, b: &Rational) -> Result<RationalFunction> {
    let k = denominator(a, b)?;
    Ok(RationalFunction::from_poly(m_a(n, a).scale(&k.recip())))
}

fn denominator(a: &Rational, b: &Rational) -> Result<Rational> {
    let k = (a - b) * (Rational::one() - a * b);
    if k.is_zero() {
        return Err(Error::DegenerateSample(format!(
            "a = {a}, b = {b} has a = b or ab = 1"
        )));
    }
    Ok(k)
}

/// `f ≡ target (mod m)` for a rational function with constant-free
/// denominator concerns: the denominator must be invertible modulo `m`.
fn congruent(f: &RationalFunction, target: &Rational, m: &Polynomial) -> Result<bool> {
    if !f.den().gcd(m)?.is_one() {
        return Ok(false);
    }
    let diff = f - &RationalFunction::constant(target.clone());
    Ok(diff.num().rem(m)?.is_zero())
}

/// Both relations, the complementary vanishing, `e_a + e_b = 1`, and the
/// closing identity at this `a`.
pub fn check_crt_relations(n: usize, a: &Rational, b: &Rational) -> Result<Verdict> {
    let ea = idempotent_a(n, a, b)?;
    let eb = idempotent_b(n, a, b)?;
    let (ma, mb) = (m_a(n, a), m_b(n, b));
    let one = Rational::one();
    let zero = Rational::zero();
    let parts = vec![
        Verdict::identity(congruent(&ea, &one, &ma)?, "e_a ≡ 1 mod (1-aq^n)(a-q^n)"),
        Verdict::identity(congruent(&eb, &one, &mb)?, "e_b ≡ 1 mod b-q^n"),
        Verdict::identity(congruent(&ea, &zero, &mb)?, "e_a ≡ 0 mod b-q^n"),
        Verdict::identity(congruent(&eb, &zero, &ma)?, "e_b ≡ 0 mod (1-aq^n)(a-q^n)"),
        Verdict::identity((&ea + &eb).is_one(), "e_a + e_b = 1"),
        Verdict::identity(closing_identity_at(n, a), "closing identity"),
    ];
    Ok(Verdict::all(parts, format!("(1-aq^{n})(a-q^{n}), b-q^{n}")))
}

/// `(1-q^n)(1+a^2-a-aq^n) - (1-a)^2 - (1-aq^n)(a-q^n)` at a rational `a`.
pub fn closing_identity_residual(n: usize, a: &Rational) -> Polynomial {
    let one = Rational::one();
    let lhs = (&Polynomial::one() - &q_pow(n)) * (&c(&(&one + a * a - a)) - &(&c(a) * &q_pow(n)));
    let sq = (&one - a) * (&one - a);
    &(&lhs - &c(&sq)) - &m_a(n, a)
}

pub fn closing_identity_at(n: usize, a: &Rational) -> bool {
    closing_identity_residual(n, a).is_zero()
}

/// The closing identity as a polynomial identity in both `a` and `q`: both
/// sides have degree 2 in `a`, so agreement at three distinct `a` suffices.
pub fn closing_identity_symbolic(n: usize) -> bool {
    [0i64, 2, 3]
        .iter()
        .all(|&a| closing_identity_at(n, &Rational::from_integer(a.into())))
}

/// `e_b` at `b = q^n` (with `b` no longer a constant): identically 1.
pub fn idempotent_b_at_qn(n: usize, a: &Rational) -> Result<RationalFunction> {
    let one = Polynomial::one();
    let den = (&c(a) - &q_pow(n)) * (&one - &(&c(a) * &q_pow(n)));
    RationalFunction::new(m_a(n, a), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    #[test]
    fn relations_hold() {
        for n in [2, 3, 5, 8] {
            for (a, b) in [
                (rat(2, 1), rat(3, 1)),
                (rat(-5, 3), rat(7, 2)),
                (rat(4, 9), rat(-1, 2)),
            ] {
                let v = check_crt_relations(n, &a, &b).unwrap();
                assert!(v.pass, "n = {n}: {v:?}");
            }
        }
    }

    #[test]
    fn closing_identity_literal() {
        assert!(closing_identity_symbolic(3));
        assert!(closing_identity_symbolic(7));
        // A wrong sign is caught.
        let n = 3;
        let a = rat(2, 1);
        let one = Rational::one();
        let bad =
            (&Polynomial::one() - &q_pow(n)) * (&c(&(&one + &a * &a + &a)) - &(&c(&a) * &q_pow(n)));
        let rhs = &c(&((&one - &a) * (&one - &a))) + &m_a(n, &a);
        assert_ne!(bad, rhs);
    }

    #[test]
    fn degenerate_samples_rejected() {
        assert!(matches!(
            check_crt_relations(3, &rat(2, 1), &rat(2, 1)),
            Err(Error::DegenerateSample(_))
        ));
        assert!(matches!(
            check_crt_relations(3, &rat(2, 1), &rat(1, 2)),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn second_idempotent_is_one_at_b_qn() {
        assert!(idempotent_b_at_qn(5, &rat(2, 1)).unwrap().is_one());
    }

    #[test]
    fn wrong_target_fails() {
        let a = rat(2, 1);
        let b = rat(3, 1);
        let ea = idempotent_a(5, &a, &b).unwrap();
        assert!(!congruent(&ea, &rat(2, 1), &m_a(5, &a)).unwrap());
    }
}
