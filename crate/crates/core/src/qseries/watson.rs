//! Terminating Watson transformation of a very-well-poised `8φ7` into a
//! balanced `4φ3`, checked as an exact identity.
//!
//! The pair `(q√a, -q√a; q)_k / (√a, -√a; q)_k` is replaced by
//! `(1 - a q^(2k)) / (1 - a)`, so no square root of `a` is needed.

use serde::Serialize;

use crate::cyclo::Verdict;
use crate::error::Result;
use crate::exec::Strategy;
use crate::kernel::{Fraction, Product};

use super::param::{common_subst, ParamValue, XMono};
use super::terms::{sum_products, QVar, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WatsonParams {
    pub a: ParamValue,
    pub b: ParamValue,
    pub c: ParamValue,
    pub d: ParamValue,
    pub e: ParamValue,
}

struct Xs {
    v: QVar,
    a: XMono,
    b: XMono,
    c: XMono,
    d: XMono,
    e: XMono,
}

impl Xs {
    fn new(p: &WatsonParams) -> Result<Self> {
        let sub = common_subst([&p.a, &p.b, &p.c, &p.d, &p.e]);
        Ok(Self {
            v: QVar::new(sub),
            a: p.a.to_x(sub)?,
            b: p.b.to_x(sub)?,
            c: p.c.to_x(sub)?,
            d: p.d.to_x(sub)?,
            e: p.e.to_x(sub)?,
        })
    }
}

/// The terminating `8φ7` side, summed over `k = 0..=n`.
pub fn watson_lhs(n: u64, p: &WatsonParams) -> Result<Fraction> {
    let x = Xs::new(p)?;
    let q = |k: i64| x.v.q(k);
    let ni = n as i64;
    let aq = &x.a * &q(1);
    let top = [
        x.a.clone(),
        x.b.clone(),
        x.c.clone(),
        x.d.clone(),
        x.e.clone(),
        q(-ni),
    ];
    let bottom = [
        q(1),
        &aq / &x.b,
        &aq / &x.c,
        &aq / &x.d,
        &aq / &x.e,
        &x.a * &q(ni + 1),
    ];
    let bcde = &(&x.b * &x.c) * &(&x.d * &x.e);
    let z = &(&x.a.pow(2) * &q(ni + 2)) / &bcde;
    let terms = (0..=n)
        .map(|k| {
            let mut t = Term::new();
            x.v.ratio(&mut t, &top, &bottom, 1, k)?
                .one_minus(&(&x.a * &q(2 * k as i64)), 1)?
                .one_minus(&x.a, -1)?
                .mono(&z, k as i64);
            Ok(t.finish())
        })
        .collect::<Result<Vec<Product>>>()?;
    Ok(sum_products(&terms, Strategy::default()))
}

/// The prefactor times the terminating `4φ3`.
pub fn watson_rhs(n: u64, p: &WatsonParams) -> Result<Fraction> {
    let x = Xs::new(p)?;
    let q = |k: i64| x.v.q(k);
    let ni = n as i64;
    let aq = &x.a * &q(1);
    let de = &x.d * &x.e;

    let mut pre = Term::new();
    x.v.ratio(
        &mut pre,
        &[aq.clone(), &aq / &de],
        &[&aq / &x.d, &aq / &x.e],
        1,
        n,
    )?;

    let top = [&aq / &(&x.b * &x.c), x.d.clone(), x.e.clone(), q(-ni)];
    let bottom = [q(1), &aq / &x.b, &aq / &x.c, &(&de * &q(-ni)) / &x.a];
    let terms = (0..=n)
        .map(|k| {
            let mut t = Term::new();
            x.v.ratio(&mut t, &top, &bottom, 1, k)?
                .mono(&q(1), k as i64);
            Ok(t.finish())
        })
        .collect::<Result<Vec<Product>>>()?;
    Ok(sum_products(&terms, Strategy::default()).mul_product(&pre.finish()))
}

pub fn check_watson(n: u64, p: &WatsonParams) -> Result<Verdict> {
    let holds = watson_lhs(n, p)?.equals(&watson_rhs(n, p)?);
    Ok(Verdict::identity(holds, "8phi7 = prefactor * 4phi3"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;
    use crate::kernel::Rational;

    fn pv(u: Rational, s: i64) -> ParamValue {
        ParamValue::new(u, s, 1).unwrap()
    }

    fn sample() -> WatsonParams {
        WatsonParams {
            a: pv(rat(2, 3), 1),
            b: pv(rat(-5, 2), 0),
            c: pv(rat(7, 4), -1),
            d: pv(rat(3, 1), 2),
            e: pv(rat(-1, 5), 0),
        }
    }

    #[test]
    fn empty_truncation_is_one() {
        let p = sample();
        assert!(watson_lhs(0, &p).unwrap().equals(&Fraction::one()));
        assert!(watson_rhs(0, &p).unwrap().equals(&Fraction::one()));
    }

    #[test]
    fn one_term_by_hand() {
        // n = 1 with q = 2 substituted by hand.
        let p = sample();
        let q = rat(2, 1);
        let (a, b, c, d, e) = (
            rat(2, 3) * &q,
            rat(-5, 2),
            rat(7, 4) / &q,
            rat(3, 1) * &q * &q,
            rat(-1, 5),
        );
        let one = Rational::from_integer(1.into());
        let z = &a * &a * q.pow(3) / (&b * &c * &d * &e);
        let lhs = &one
            + (&one - &a)
                * (&one - &b)
                * (&one - &c)
                * (&one - &d)
                * (&one - &e)
                * (&one - q.recip())
                / ((&one - &q)
                    * (&one - &a * &q / &b)
                    * (&one - &a * &q / &c)
                    * (&one - &a * &q / &d)
                    * (&one - &a * &q / &e)
                    * (&one - &a * &q * &q))
                * (&one - &a * &q * &q)
                / (&one - &a)
                * &z;
        let got = watson_lhs(1, &p).unwrap().eval(&q).unwrap();
        assert_eq!(got, lhs);
        let rhs_pre = (&one - &a * &q) * (&one - &a * &q / (&d * &e))
            / ((&one - &a * &q / &d) * (&one - &a * &q / &e));
        let phi = &one
            + (&one - &a * &q / (&b * &c)) * (&one - &d) * (&one - &e) * (&one - q.recip())
                / ((&one - &q)
                    * (&one - &a * &q / &b)
                    * (&one - &a * &q / &c)
                    * (&one - &d * &e / (&q * &a)))
                * &q;
        assert_eq!(watson_rhs(1, &p).unwrap().eval(&q).unwrap(), rhs_pre * phi);
        assert!(check_watson(1, &p).unwrap().pass);
    }

    #[test]
    fn holds_up_to_five() {
        let p = sample();
        for n in 0..=5 {
            assert!(check_watson(n, &p).unwrap().pass, "n = {n}");
        }
    }

    #[test]
    fn perturbed_side_fails() {
        let p = sample();
        let lhs = watson_lhs(3, &p).unwrap();
        let mut q = p.clone();
        q.e = pv(rat(-1, 6), 0);
        assert!(!lhs.equals(&watson_rhs(3, &q).unwrap()));
    }
}
