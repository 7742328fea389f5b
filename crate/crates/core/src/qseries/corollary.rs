//! Specializations of the `d = 3, r = -1` theorem and the two earlier
//! congruences it is compared against, all written out as displayed rather
//! than derived from the general builders.

use num_traits::One;
use serde::Serialize;

use crate::cyclo::{divides, Modulus, Verdict};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernel::{Fraction, Product, Rational};

use super::param::XMono;
use super::terms::{sum_products, QVar, Term};
use super::theorem::{harmonic_bracket, Truncation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Corollary {
    C22,
    C23,
    C24,
    C26,
    Equ3,
    Equ4,
}

impl Corollary {
    pub const ALL: [Corollary; 6] = [
        Corollary::C22,
        Corollary::C23,
        Corollary::C24,
        Corollary::C26,
        Corollary::Equ3,
        Corollary::Equ4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Corollary::C22 => "c22",
            Corollary::C23 => "c23",
            Corollary::C24 => "c24",
            Corollary::C26 => "c26",
            Corollary::Equ3 => "equ3",
            Corollary::Equ4 => "equ4",
        }
    }

    /// Residue-class and size requirements on `n`.
    pub fn admits(self, n: i64) -> Result<()> {
        let ok = match self {
            Corollary::Equ3 => n > 2 && n % 3 == 2,
            Corollary::Equ4 => n > 1 && n % 3 == 1,
            _ => n > 0 && n % 3 == 2,
        };
        if ok {
            Ok(())
        } else {
            let need = match self {
                Corollary::Equ3 => "n > 2 and n ≡ 2 (mod 3)",
                Corollary::Equ4 => "n > 1 and n ≡ 1 (mod 3)",
                _ => "n ≡ 2 (mod 3)",
            };
            Err(Error::Precondition(format!(
                "{} requires {need}, got n = {n}",
                self.id()
            )))
        }
    }

    /// Truncations that the statement covers.
    pub fn truncations(self) -> &'static [Truncation] {
        match self {
            Corollary::Equ3 => &[Truncation::Short],
            Corollary::Equ4 => &[Truncation::Long],
            _ => &Truncation::BOTH,
        }
    }

    pub fn is_conjecture(self) -> bool {
        self == Corollary::Equ4
    }
}

fn upper(n: i64, w: Truncation) -> i64 {
    match w {
        Truncation::Short => (n + 1) / 3,
        Truncation::Long => n - 1,
    }
}

/// `q = x^sub`, with exponents given in halves of `q`.
#[derive(Clone, Copy)]
struct Half {
    v: QVar,
}

impl Half {
    fn new(sub: u32) -> Result<Self> {
        if !sub.is_multiple_of(2) {
            return Err(Error::Precondition(
                "half powers of q need an even substitution".into(),
            ));
        }
        Ok(Self { v: QVar::new(sub) })
    }

    /// `q^(h/2)`.
    fn h(&self, h: i64) -> XMono {
        XMono::x(h * self.v.sub / 2)
    }
}

/// `[n] q^N (q^-2; q^3)_N / (q^3; q^3)_N (1 - [n]^2 sum q^(3i)/[3i]^2)`,
/// `N = (n+1)/3`, common to several right-hand sides.
fn common_prefactor(n: i64, v: QVar) -> Result<Fraction> {
    let big_n = (n + 1) / 3;
    let mut t = Term::new();
    t.qint(n, v.sub, 1)?
        .mono(&v.q(big_n), 1)
        .poch(&v.q(-2), v.step(3), big_n as u64, 1)?
        .poch(&v.q(3), v.step(3), big_n as u64, -1)?;
    Ok(harmonic_bracket(n, 3, big_n, v.sub)?.mul_product(&t.finish()))
}

fn sum(terms: Vec<Product>) -> Fraction {
    sum_products(&terms, Strategy::default())
}

/// Summands `[6k-1] (q^-1;q^3)_k^4 / (q^3;q^3)_k^4 q^(5k)`.
pub fn c26_lhs_terms(upper: i64) -> Result<Vec<Product>> {
    let v = QVar::new(1);
    (0..=upper)
        .map(|k| {
            let mut t = Term::new();
            t.qint(6 * k - 1, 1, 1)?
                .poch(&v.q(-1), 3, k as u64, 4)?
                .poch(&v.q(3), 3, k as u64, -4)?
                .mono(&v.q(5), k);
            Ok(t.finish())
        })
        .collect()
}

/// Summands `[6k-1]_{q^2} [6k-1]^2 (q^-2;q^6)_k^4 / (q^6;q^6)_k^4 q^(4k)`.
pub fn c24_lhs_terms(upper: i64) -> Result<Vec<Product>> {
    let v = QVar::new(1);
    (0..=upper)
        .map(|k| {
            let mut t = Term::new();
            t.qint(6 * k - 1, 2, 1)?
                .qint(6 * k - 1, 1, 2)?
                .poch(&v.q(-2), 6, k as u64, 4)?
                .poch(&v.q(6), 6, k as u64, -4)?
                .mono(&v.q(4), k);
            Ok(t.finish())
        })
        .collect()
}

/// Both sides of a corollary as fractions in the working variable, with the
/// modulus (or `None` when the right-hand side is omitted, i.e. zero).
pub struct Sides {
    pub lhs: Fraction,
    pub rhs: Fraction,
    pub modulus: Modulus,
}

/// Builds both sides. `subst` applies only to `c23` (2 or 4).
pub fn build(which: Corollary, n: i64, w: Truncation, subst: u32) -> Result<Sides> {
    which.admits(n)?;
    if !which.truncations().contains(&w) {
        return Err(Error::Precondition(format!(
            "{} is not stated for {}",
            which.id(),
            w.label()
        )));
    }
    let m = upper(n, w);
    let big_n = (n + 1) / 3;
    let nu = n as u64;
    let plain = QVar::new(1);
    let q = |k: i64| plain.q(k);
    match which {
        Corollary::C22 => {
            let lhs = (0..=m)
                .map(|k| {
                    let mut t = Term::new();
                    t.qint(6 * k - 1, 1, 1)?
                        .poch(&q(-1), 3, k as u64, 6)?
                        .poch(&q(3), 3, k as u64, -6)?
                        .mono(&q(9), k);
                    Ok(t.finish())
                })
                .collect::<Result<Vec<_>>>()?;
            let inner = (0..=big_n)
                .map(|k| {
                    let mut t = Term::new();
                    t.poch(&q(4), 3, k as u64, 1)?
                        .poch(&q(-1), 3, k as u64, 3)?
                        .poch(&q(3), 3, k as u64, -3)?
                        .poch(&q(-2), 3, k as u64, -1)?
                        .mono(&q(3), k);
                    Ok(t.finish())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Sides {
                lhs: sum(lhs),
                rhs: common_prefactor(n, plain)?.mul(&sum(inner)),
                modulus: Modulus::q_integer_times_phi(nu, 3),
            })
        }
        Corollary::C23 => {
            let hv = Half::new(subst)?;
            let h = |e: i64| hv.h(e);
            let step = hv.v.step(3);
            let lhs = (0..=m)
                .map(|k| {
                    let ku = k as u64;
                    let mut t = Term::new();
                    t.qint(6 * k - 1, hv.v.sub, 1)?
                        .poch(&h(-2), step, ku, 3)?
                        .poch(&h(3), step, ku, 1)?
                        .poch(&h(6), step, ku, -3)?
                        .poch(&h(1), step, ku, -1)?
                        .mono(&h(5), k);
                    Ok(t.finish())
                })
                .collect::<Result<Vec<_>>>()?;
            let inner = (0..=big_n)
                .map(|k| {
                    let ku = k as u64;
                    let mut t = Term::new();
                    t.poch(&h(-5), step, ku, 1)?
                        .poch(&h(-2), step, ku, 2)?
                        .poch(&h(6), step, ku, -1)?
                        .poch(&h(1), step, ku, -1)?
                        .poch(&h(-4), step, ku, -1)?
                        .mono(&h(6), k);
                    Ok(t.finish())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Sides {
                lhs: sum(lhs),
                rhs: common_prefactor(n, hv.v)?.mul(&sum(inner)),
                modulus: Modulus::q_integer_times_phi(nu, 3).with_subst(subst),
            })
        }
        Corollary::C24 => {
            let lhs = c24_lhs_terms(m)?;
            let mut pre = Term::new();
            pre.constant(&Rational::from_integer((-2).into()))
                .qint(n, 2, 1)?
                .mono(&q((2 * n - 7) / 3), 1)
                .poch(&q(-4), 6, big_n as u64, 1)?
                .poch(&q(6), 6, big_n as u64, -1)?
                // 1 + q^-2
                .one_minus(&XMono::new(-Rational::one(), -2), -1)?;
            let rhs = harmonic_bracket(n, 3, big_n, 2)?.mul_product(&pre.finish());
            Ok(Sides {
                lhs: sum(lhs),
                rhs,
                modulus: Modulus::q_integer_times_phi(nu, 3).with_subst(2),
            })
        }
        Corollary::C26 => Ok(Sides {
            lhs: sum(c26_lhs_terms(m)?),
            rhs: common_prefactor(n, plain)?,
            modulus: Modulus::q_integer_times_phi(nu, 3),
        }),
        Corollary::Equ3 => Ok(Sides {
            lhs: equ3_lhs(m, 4)?,
            rhs: Fraction::zero(),
            modulus: Modulus::phi_power(nu, 1),
        }),
        Corollary::Equ4 => {
            let lhs = (0..=m)
                .map(|k| {
                    let mut t = Term::new();
                    t.qint(6 * k - 1, 1, 1)?
                        .poch(&q(-1), 3, k as u64, 6)?
                        .poch(&q(3), 3, k as u64, -6)?
                        .mono(&q(9), k);
                    Ok(t.finish())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Sides {
                lhs: sum(lhs),
                rhs: Fraction::zero(),
                modulus: Modulus::q_integer_times_phi(nu, 3),
            })
        }
    }
}

/// `sum_{k=0}^{upper} [6k-1] (q^-1;q^3)_k^4 (q^3;q^3)_2k / ((q^3;q^3)_k^4 (q^-2;q^3)_2k) q^(jk)`.
///
/// The stated form has `j = 4`; other `j` are exposed for diagnostics.
pub fn equ3_lhs(upper: i64, j: i64) -> Result<Fraction> {
    let v = QVar::new(1);
    let terms = (0..=upper)
        .map(|k| {
            let ku = k as u64;
            let mut t = Term::new();
            t.qint(6 * k - 1, 1, 1)?
                .poch(&v.q(-1), 3, ku, 4)?
                .poch(&v.q(3), 3, 2 * ku, 1)?
                .poch(&v.q(3), 3, ku, -4)?
                .poch(&v.q(-2), 3, 2 * ku, -1)?
                .mono(&v.q(j), k);
            Ok(t.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum(terms))
}

pub fn check_corollary(which: Corollary, n: i64, w: Truncation, subst: u32) -> Result<Verdict> {
    check_corollary_with(which, n, w, subst, 0)
}

/// As [`check_corollary`] with the top cyclotomic exponent raised by `extra`.
pub fn check_corollary_with(
    which: Corollary,
    n: i64,
    w: Truncation,
    subst: u32,
    extra: u32,
) -> Result<Verdict> {
    let s = build(which, n, w, subst)?;
    divides(&s.modulus.raised(extra), &s.lhs.sub(&s.rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(Corollary::Equ3.admits(2).is_err());
        assert!(Corollary::Equ3.admits(5).is_ok());
        assert!(Corollary::Equ4.admits(4).is_ok());
        assert!(Corollary::C22.admits(4).is_err());
    }

    #[test]
    fn small_cases() {
        for which in [Corollary::C22, Corollary::C26] {
            for n in [2, 5, 8] {
                for &w in which.truncations() {
                    let v = check_corollary(which, n, w, 1).unwrap();
                    assert!(v.pass, "{which:?} n={n} {w:?}: {v:?}");
                }
            }
        }
        assert!(
            check_corollary(Corollary::Equ4, 4, Truncation::Long, 1)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn equ3_as_stated_and_without_the_power() {
        // With the factor q^(4k) the sum is not divisible by Φ_n; without it,
        // it is. Cross-checked with an independent computer algebra system.
        for n in [5, 8, 11, 14] {
            let upper = (n + 1) / 3;
            let stated = check_corollary(Corollary::Equ3, n, Truncation::Short, 1).unwrap();
            assert!(!stated.pass, "n = {n}");
            let bare = equ3_lhs(upper, 0).unwrap();
            assert!(
                divides(&Modulus::phi_power(n as u64, 1), &bare)
                    .unwrap()
                    .pass,
                "n = {n}"
            );
        }
    }

    #[test]
    fn half_powers_agree_across_substitutions() {
        for n in [2, 5] {
            for w in Truncation::BOTH {
                let a = check_corollary(Corollary::C23, n, w, 2).unwrap();
                let b = check_corollary(Corollary::C23, n, w, 4).unwrap();
                assert!(a.pass, "n={n} {w:?}: {a:?}");
                assert_eq!(a.pass, b.pass);
            }
        }
        assert!(build(Corollary::C23, 5, Truncation::Short, 1).is_err());
    }

    #[test]
    fn c23_long_truncation_breaks_at_eleven() {
        // (q^(1/2);q^3)_10 contains 1 - q^(55/2), so Φ_11(x) enters a
        // denominator and the k = 5..10 tail has Φ_11(x)-valuation 3 only.
        for sub in [2, 4] {
            assert!(
                check_corollary(Corollary::C23, 8, Truncation::Long, sub)
                    .unwrap()
                    .pass
            );
            assert!(
                check_corollary(Corollary::C23, 11, Truncation::Short, sub)
                    .unwrap()
                    .pass
            );
            let long = check_corollary(Corollary::C23, 11, Truncation::Long, sub).unwrap();
            assert!(!long.pass);
            assert!(long
                .failure_witness
                .unwrap()
                .factor
                .starts_with("Phi_11(x)"));
        }
    }

    #[test]
    fn c26_k0_term_is_minus_one_at_q1() {
        let t = c26_lhs_terms(0).unwrap();
        assert_eq!(t[0].limit_at_one().unwrap(), -Rational::one());
    }
}
