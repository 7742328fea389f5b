//! Classical (q = 1) congruences: exact rational sums reduced once modulo
//! the stated power of `p`, compared with Γ_p and Bernoulli expressions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::rational::{int, rat};
use crate::kernel::Rational;

use super::{
    bernoulli_poly_eval, legendre, padic_gamma, reduce_with_context, require_prime,
    rising_factorial, PadicInt,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalId {
    VanHammeD2,
    LongRamakrishna,
    LiuE4,
    Equ1,
    Equ2,
    Equ7,
    Equ8,
    CombinedRare,
    Lehmer,
    Equ9,
}

impl ClassicalId {
    pub const ALL: [ClassicalId; 10] = [
        ClassicalId::VanHammeD2,
        ClassicalId::LongRamakrishna,
        ClassicalId::LiuE4,
        ClassicalId::Equ1,
        ClassicalId::Equ2,
        ClassicalId::Equ7,
        ClassicalId::Equ8,
        ClassicalId::CombinedRare,
        ClassicalId::Lehmer,
        ClassicalId::Equ9,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClassicalId::VanHammeD2 => "van_hamme_d2",
            ClassicalId::LongRamakrishna => "long_ramakrishna",
            ClassicalId::LiuE4 => "liu_e4",
            ClassicalId::Equ1 => "equ1",
            ClassicalId::Equ2 => "equ2",
            ClassicalId::Equ7 => "equ7",
            ClassicalId::Equ8 => "equ8",
            ClassicalId::CombinedRare => "combined_rare",
            ClassicalId::Lehmer => "lehmer",
            ClassicalId::Equ9 => "equ9",
        }
    }

    /// Power of `p` in the statement (`0` for the exact identity).
    pub fn stated_precision(self) -> u32 {
        match self {
            ClassicalId::VanHammeD2 => 4,
            ClassicalId::LongRamakrishna => 6,
            ClassicalId::LiuE4 => 5,
            ClassicalId::Equ1 => 3,
            ClassicalId::Equ2
            | ClassicalId::Equ7
            | ClassicalId::Equ8
            | ClassicalId::CombinedRare => 4,
            ClassicalId::Lehmer => 1,
            ClassicalId::Equ9 => 0,
        }
    }

    pub fn default_primes(self) -> Vec<u64> {
        match self {
            ClassicalId::VanHammeD2 => vec![7, 13],
            ClassicalId::LongRamakrishna | ClassicalId::LiuE4 => vec![5, 7, 11, 13],
            ClassicalId::Equ1 | ClassicalId::Equ2 => vec![5, 11, 17],
            ClassicalId::Equ7 | ClassicalId::Equ8 | ClassicalId::CombinedRare => {
                vec![5, 11, 17, 23]
            }
            ClassicalId::Lehmer => (5..=50).filter(|&p| super::is_prime(p)).collect(),
            ClassicalId::Equ9 => vec![2, 5, 11, 17, 23],
        }
    }

    /// Residue-class hypothesis on `p` (primality is checked separately).
    pub fn admits(self, p: u64) -> Result<()> {
        let (ok, need) = match self {
            ClassicalId::VanHammeD2 => (p % 6 == 1, "p ≡ 1 (mod 6)"),
            ClassicalId::LongRamakrishna | ClassicalId::LiuE4 | ClassicalId::Lehmer => {
                (p >= 5, "p >= 5")
            }
            ClassicalId::Equ1
            | ClassicalId::Equ2
            | ClassicalId::Equ7
            | ClassicalId::Equ8
            | ClassicalId::CombinedRare => (p % 3 == 2 && p > 2, "odd p ≡ 2 (mod 3)"),
            ClassicalId::Equ9 => (p % 3 == 2, "p ≡ 2 (mod 3)"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{} requires {need}, got p = {p}",
                self.id()
            )))
        }
    }
}

impl fmt::Display for ClassicalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClassicalId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassicalId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown classical check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalCheck {
    pub id: ClassicalId,
    pub p: u64,
    /// Power of `p`; defaults to the stated one.
    pub precision: u32,
}

impl ClassicalCheck {
    pub fn new(id: ClassicalId, p: u64) -> Result<Self> {
        Self::with_precision(id, p, id.stated_precision())
    }

    pub fn with_precision(id: ClassicalId, p: u64, precision: u32) -> Result<Self> {
        require_prime(p)?;
        id.admits(p)?;
        Ok(Self { id, p, precision })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalOutcome {
    pub pass: bool,
    pub modulus: String,
    /// Reduced left side, or the exact value for identities.
    pub lhs: String,
    pub rhs: String,
    /// Which branch of a two-case statement applied.
    pub branch: Option<String>,
}

/// `sum_{k=0}^{upper} f(k)`, asserting that every summand is `p`-integral.
fn exact_sum(p: u64, upper: u64, what: &str, f: impl Fn(u64) -> Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in 0..=upper {
        let t = f(k);
        if super::valuation_int(t.denom(), p) > 0 {
            return Err(Error::NegativeValuation {
                p,
                context: format!("{what} summand k = {k}"),
            });
        }
        acc += t;
    }
    Ok(acc)
}

fn fact(k: u64) -> Rational {
    rising_factorial(&Rational::one(), k)
}

/// `(-1/3)_k^4 / k!^4`.
fn base4(k: u64) -> Rational {
    let r = rising_factorial(&rat(-1, 3), k) / fact(k);
    num_traits::pow(r, 4)
}

fn pow_sign(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The left-hand sum with `(1)_2k / (-2/3)_2k`, shared by two statements.
pub fn equ1_sum(p: u64) -> Rational {
    let upper = (p + 1) / 3;
    (0..=upper)
        .map(|k| {
            int(6 * k as i64 - 1) * base4(k) * rising_factorial(&int(1), 2 * k)
                / rising_factorial(&rat(-2, 3), 2 * k)
        })
        .sum()
}

/// The right-hand sum with `(1/2)_k / (1/6)_k`.
pub fn equ9_rhs_sum(p: u64) -> Rational {
    let upper = (p + 1) / 3;
    (0..=upper)
        .map(|k| {
            let r = rising_factorial(&rat(-1, 3), k) / fact(k);
            int(6 * k as i64 - 1) * num_traits::pow(r, 3) * rising_factorial(&rat(1, 2), k)
                / rising_factorial(&rat(1, 6), k)
        })
        .sum()
}

/// `sum_{k=0}^{(p+1)/3} (6k-1)^e (-1/3)_k^4 / k!^4`.
pub fn minus_third_sum(p: u64, e: u32) -> Rational {
    let upper = (p + 1) / 3;
    (0..=upper)
        .map(|k| num_traits::pow(int(6 * k as i64 - 1), e as usize) * base4(k))
        .sum()
}

/// `1 - p^2 - p^2/18 (-3/p) B_{p-2}(1/3)`.
fn bracket_78(p: u64) -> Result<Rational> {
    let pp = int(p as i64);
    let leg = int(legendre(-3, p)? as i64);
    Ok(Rational::one()
        - &pp * &pp
        - &pp * &pp / int(18) * leg * bernoulli_poly_eval(p as usize - 2, &rat(1, 3)))
}

pub fn run_classical(c: &ClassicalCheck) -> Result<ClassicalOutcome> {
    let ClassicalCheck {
        id,
        p,
        precision: m,
    } = *c;
    let pr = int(p as i64);
    let reduce = |x: &Rational, what: &str| reduce_with_context(x, p, m, what);
    let modulus = format!("{p}^{m}");
    let compare = |lhs: PadicInt, rhs: PadicInt, branch: Option<String>| ClassicalOutcome {
        pass: lhs == rhs,
        modulus: modulus.clone(),
        lhs: lhs.residue.to_string(),
        rhs: rhs.residue.to_string(),
        branch,
    };
    let pi = |x: &Rational| reduce(x, "constant");

    match id {
        ClassicalId::VanHammeD2 | ClassicalId::LongRamakrishna => {
            let upper = if id == ClassicalId::VanHammeD2 {
                (p - 1) / 3
            } else {
                p - 1
            };
            let s = exact_sum(p, upper, id.id(), |k| {
                let r = rising_factorial(&rat(1, 3), k) / fact(k);
                int(6 * k as i64 + 1) * num_traits::pow(r, 6)
            })?;
            let g9 = padic_gamma(&rat(1, 3), p, m)?.pow(9);
            let (coef, branch) = if p % 6 == 1 {
                (-pr.clone(), "p ≡ 1 (mod 6)")
            } else {
                (
                    rat(-10, 27) * num_traits::pow(pr.clone(), 4),
                    "p ≡ 5 (mod 6)",
                )
            };
            Ok(compare(
                reduce(&s, "sum")?,
                pi(&coef)?.mul(&g9),
                Some(branch.into()),
            ))
        }
        ClassicalId::LiuE4 => {
            let s = exact_sum(p, p - 1, id.id(), |k| {
                let r = rising_factorial(&rat(-1, 3), k) / fact(k);
                int(6 * k as i64 - 1) * num_traits::pow(r, 6)
            })?;
            let g9 = padic_gamma(&rat(2, 3), p, m)?.pow(9);
            let (coef, branch) = if p % 6 == 1 {
                (int(140) * num_traits::pow(pr.clone(), 4), "p ≡ 1 (mod 6)")
            } else {
                (int(378) * pr.clone(), "p ≡ 5 (mod 6)")
            };
            Ok(compare(
                reduce(&s, "sum")?,
                pi(&coef)?.mul(&g9),
                Some(branch.into()),
            ))
        }
        ClassicalId::Equ1 | ClassicalId::Equ2 => {
            let upper = (p + 1) / 3;
            exact_sum(p, upper, id.id(), |k| {
                int(6 * k as i64 - 1) * base4(k) * rising_factorial(&int(1), 2 * k)
                    / rising_factorial(&rat(-2, 3), 2 * k)
            })?;
            let s = equ1_sum(p);
            let rhs = if id == ClassicalId::Equ1 {
                pr.clone()
            } else {
                let b = bernoulli_poly_eval(p as usize - 2, &rat(1, 3));
                &pr - num_traits::pow(pr.clone(), 3) * (b / int(9) - int(2))
            };
            Ok(compare(reduce(&s, "sum")?, pi(&rhs)?, None))
        }
        ClassicalId::Equ7 | ClassicalId::Equ8 | ClassicalId::CombinedRare => {
            let upper = (p + 1) / 3;
            let s = exact_sum(p, upper, id.id(), |k| {
                let w = int(6 * k as i64 - 1);
                let weight = match id {
                    ClassicalId::Equ7 => &w * &w * &w,
                    ClassicalId::Equ8 => w,
                    _ => {
                        let k = int(k as i64);
                        w * (int(18) * &k * &k - int(6) * k + int(1))
                    }
                };
                weight * base4(k)
            })?;
            if id == ClassicalId::CombinedRare {
                return Ok(compare(reduce(&s, "sum")?, pi(&Rational::zero())?, None));
            }
            let sign = if id == ClassicalId::Equ7 {
                pow_sign((p - 2) / 3)
            } else {
                pow_sign((p + 1) / 3)
            };
            let g2 = padic_gamma(&rat(2, 3), p, m)?.pow(2);
            let rhs = pi(&(sign * &pr * bracket_78(p)?))?.mul(&g2);
            Ok(compare(reduce(&s, "sum")?, rhs, None))
        }
        ClassicalId::Lehmer => {
            let s: Rational = (1..=p / 3).map(|k| int(k as i64 * k as i64).recip()).sum();
            let rhs = rat(1, 2)
                * int(legendre(-3, p)? as i64)
                * bernoulli_poly_eval(p as usize - 2, &rat(1, 3));
            Ok(compare(
                reduce(&s, "sum")?,
                reduce(&rhs, "right side")?,
                None,
            ))
        }
        ClassicalId::Equ9 => {
            let lhs = equ1_sum(p);
            let rhs = equ9_rhs_sum(p);
            Ok(ClassicalOutcome {
                pass: lhs == rhs,
                modulus: "exact".into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                branch: (p == 2).then(|| "informational: p = 2".to_string()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: ClassicalId, p: u64) -> ClassicalOutcome {
        run_classical(&ClassicalCheck::new(id, p).unwrap()).unwrap()
    }

    #[test]
    fn lehmer_at_five_by_hand() {
        let o = run(ClassicalId::Lehmer, 5);
        assert_eq!(o.lhs, "1");
        assert_eq!(o.rhs, "1");
        assert!(o.pass);
    }

    #[test]
    fn equ9_at_two() {
        let o = run(ClassicalId::Equ9, 2);
        assert_eq!(o.lhs, "-14/9");
        assert_eq!(o.rhs, "-14/9");
        assert!(o.pass);
    }

    #[test]
    fn cheap_statements_hold() {
        for p in [5, 11, 17] {
            assert!(run(ClassicalId::Equ1, p).pass);
            assert!(run(ClassicalId::Equ2, p).pass);
        }
        assert!(run(ClassicalId::CombinedRare, 5).pass);
        assert!(run(ClassicalId::VanHammeD2, 7).pass);
    }

    #[test]
    fn raised_precision_fails_somewhere() {
        let fails = [5, 11, 17].iter().any(|&p| {
            let c = ClassicalCheck::with_precision(ClassicalId::Equ2, p, 5).unwrap();
            !run_classical(&c).unwrap().pass
        });
        assert!(fails);
    }

    #[test]
    fn displayed_gamma_forms_of_the_minus_third_sums_fail() {
        for p in [5, 11, 17, 23] {
            assert!(!run(ClassicalId::Equ7, p).pass, "p = {p}");
            assert!(!run(ClassicalId::Equ8, p).pass, "p = {p}");
            assert!(run(ClassicalId::CombinedRare, p).pass, "p = {p}");
        }
    }

    #[test]
    fn minus_third_sum_matches_its_q_to_one_right_side() {
        // q -> 1 of [n] q^N (q^-2;q^3)_N / (q^3;q^3)_N (1 - [n]^2 sum q^(3i)/[3i]^2)
        // at n = p: p (-2/3)_N / N! (1 - p^2 sum 1/(9 i^2)).
        for p in [5u64, 11, 17, 23] {
            let big_n = (p + 1) / 3;
            let pr = int(p as i64);
            let h: Rational = (1..=big_n).map(|i| int(9 * (i * i) as i64).recip()).sum();
            let rhs = &pr * rising_factorial(&rat(-2, 3), big_n) / fact(big_n)
                * (Rational::one() - &pr * &pr * h);
            let s8 = minus_third_sum(p, 1);
            let s7 = minus_third_sum(p, 3);
            let r = |x: &Rational| reduce_with_context(x, p, 4, "t").unwrap();
            assert_eq!(r(&s8), r(&rhs), "p = {p}");
            assert_eq!(r(&s7), r(&-rhs), "p = {p}");
        }
    }

    #[test]
    fn residue_classes() {
        assert!(ClassicalCheck::new(ClassicalId::VanHammeD2, 5).is_err());
        assert!(ClassicalCheck::new(ClassicalId::Equ2, 7).is_err());
        assert!(matches!(
            ClassicalCheck::new(ClassicalId::Lehmer, 4),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn ids_round_trip() {
        for id in ClassicalId::ALL {
            assert_eq!(id.id().parse::<ClassicalId>().unwrap(), id);
        }
    }
}
