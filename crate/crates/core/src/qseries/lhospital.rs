//! The limit `a -> 1` of
//! `(1-aq^n)(a-q^n)/(1-a)^2 {1/(q^d;q^d)_N - (q^d;q^d)_N/(aq^d, q^d/a; q^d)_N}`,
//! which should equal `-[n]^2/(q^d;q^d)_N sum_{i=1}^{N} q^(di)/[di]^2`.
//!
//! Two independent routes:
//! * pointwise: `q` fixed at rational points, `a` the polynomial variable;
//!   the `(1-a)^2` cancels under normalization and the result is evaluated at
//!   `a = 1`;
//! * series: `a = 1 + ε` with coefficients that are rational functions of
//!   `q`, expanded to order `ε^2`.

use num_traits::One;
use serde::Serialize;

use crate::cyclo::Verdict;
use crate::error::{Error, Result};
use crate::kernel::{Polynomial, Rational, RationalFunction};

use super::lemmas::LemmaShape;

fn q_rf(k: usize) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::monomial(Rational::one(), k))
}

fn one_minus_q(k: usize) -> RationalFunction {
    &RationalFunction::one() - &q_rf(k)
}

/// `(q^d; q^d)_N` as a rational function of `q`.
fn pd(d: usize, big_n: usize) -> RationalFunction {
    (1..=big_n).fold(RationalFunction::one(), |acc, i| &acc * &one_minus_q(d * i))
}

/// `[m]` as a rational function of `q`.
fn qint(m: usize) -> RationalFunction {
    RationalFunction::from_poly(crate::cyclo::q_integer(m as u64))
}

/// The claimed value of the limit.
pub fn limit_claimed(s: &LemmaShape) -> Result<RationalFunction> {
    let (n, d, big_n) = (s.n as usize, s.d as usize, s.big_n() as usize);
    let mut sum = RationalFunction::zero();
    for i in 1..=big_n {
        let di = qint(d * i);
        sum = &sum + &q_rf(d * i).checked_div(&(&di * &di))?;
    }
    let nn = qint(n);
    Ok(-(&(&nn * &nn) * &sum).checked_div(&pd(d, big_n))?)
}

/// Pointwise route: the limit at `q = q0`.
pub fn limit_at_point(s: &LemmaShape, q0: &Rational) -> Result<Rational> {
    let (n, d, big_n) = (s.n as i32, s.d as i32, s.big_n() as usize);
    let one = Polynomial::one();
    let a = Polynomial::x();
    let c = |x: Rational| Polynomial::constant(x);
    let qn = q0.pow(n);
    let p: Rational = (1..=big_n as i32)
        .map(|i| Rational::one() - q0.pow(d * i))
        .product();
    // H(a) = prod (1 - a t)(a - t), and (aq^d, q^d/a)_N = H(a) / a^N.
    let mut h = one.clone();
    for i in 1..=big_n as i32 {
        let t = q0.pow(d * i);
        h = h * (&one - &(&a * &c(t.clone()))) * (&a - &c(t));
    }
    let front = (&one - &(&a * &c(qn.clone()))) * (&a - &c(qn));
    let a_n = Polynomial::monomial(Rational::one(), big_n);
    let num = front * (&h - &(a_n.scale(&(&p * &p))));
    let one_minus_a = &one - &a;
    let den = (&one_minus_a * &one_minus_a).scale(&p) * h;
    let f = RationalFunction::new(num, den)?;
    f.eval(&Rational::one())
}

/// A power series in `ε` truncated after `ε^2`.
#[derive(Clone, Debug)]
struct Series([RationalFunction; 3]);

impl Series {
    fn constant(c: RationalFunction) -> Self {
        Series([c, RationalFunction::zero(), RationalFunction::zero()])
    }

    fn mul(&self, o: &Series) -> Series {
        let (a, b) = (&self.0, &o.0);
        Series([
            &a[0] * &b[0],
            &(&a[0] * &b[1]) + &(&a[1] * &b[0]),
            &(&(&a[0] * &b[2]) + &(&a[1] * &b[1])) + &(&a[2] * &b[0]),
        ])
    }

    fn recip(&self) -> Result<Series> {
        let [g0, g1, g2] = &self.0;
        let h0 = g0.recip()?;
        let h1 = -(g1 * &(&h0 * &h0));
        let h2 = &(&(g1 * g1) - &(g0 * g2)) * &(&h0 * &(&h0 * &h0));
        Ok(Series([h0, h1, h2]))
    }

    fn sub(&self, o: &Series) -> Series {
        Series([
            &self.0[0] - &o.0[0],
            &self.0[1] - &o.0[1],
            &self.0[2] - &o.0[2],
        ])
    }
}

/// Series route: returns the limit as a rational function of `q`, after
/// confirming that the braces vanish to second order at `a = 1`.
pub fn limit_series(s: &LemmaShape) -> Result<RationalFunction> {
    let (n, d, big_n) = (s.n as usize, s.d as usize, s.big_n() as usize);
    let zero = RationalFunction::zero;
    let p = pd(d, big_n);
    let mut g = Series::constant(RationalFunction::one());
    for i in 1..=big_n {
        let t = q_rf(d * i);
        let base = one_minus_q(d * i);
        // 1 - (1+ε) t and 1 - t/(1+ε) = 1 - t (1 - ε + ε^2)
        let left = Series([base.clone(), -t.clone(), zero()]);
        let right = Series([base, t.clone(), -t]);
        g = g.mul(&left).mul(&right);
    }
    let braces = Series::constant(p.recip()?).sub(&Series::constant(p).mul(&g.recip()?));
    if !braces.0[0].is_zero() || !braces.0[1].is_zero() {
        return Err(Error::Pole(
            "braces do not vanish to second order at a = 1".into(),
        ));
    }
    let front0 = &one_minus_q(n) * &one_minus_q(n);
    Ok(&front0 * &braces.0[2])
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub points: Vec<String>,
    pub pointwise_agrees: bool,
    pub series_agrees: bool,
    pub routes_agree: bool,
}

pub fn default_points() -> Vec<Rational> {
    [(2, 1), (-3, 2), (5, 7), (-4, 9)]
        .iter()
        .map(|&(a, b)| Rational::new(a.into(), b.into()))
        .collect()
}

/// Runs both routes against the claimed value.
pub fn check_lhospital_limit(
    s: &LemmaShape,
    points: &[Rational],
) -> Result<(Verdict, LimitReport)> {
    let claimed = limit_claimed(s)?;
    let series = match limit_series(s) {
        Ok(v) => Some(v),
        Err(Error::Pole(_)) => None,
        Err(e) => return Err(e),
    };
    let series_agrees = series.as_ref() == Some(&claimed);
    let mut pointwise_agrees = true;
    let mut routes_agree = series.is_some();
    for q0 in points {
        let value = match limit_at_point(s, q0) {
            Ok(v) => Some(v),
            Err(Error::Pole(_)) => None,
            Err(e) => return Err(e),
        };
        let want = claimed.eval(q0)?;
        pointwise_agrees &= value.as_ref() == Some(&want);
        if let (Some(v), Some(sr)) = (&value, &series) {
            routes_agree &= *v == sr.eval(q0)?;
        } else {
            routes_agree = false;
        }
    }
    let pass = series_agrees && pointwise_agrees && routes_agree;
    let report = LimitReport {
        points: points.iter().map(|p| p.to_string()).collect(),
        pointwise_agrees,
        series_agrees,
        routes_agree,
    };
    let mut v = Verdict::identity(pass, "limit a -> 1 (pointwise and series routes)");
    if !pass {
        if let Some(w) = v.failure_witness.as_mut() {
            w.remainder = vec![format!(
                "pointwise={pointwise_agrees} series={series_agrees} routes={routes_agree}"
            )];
        }
    }
    Ok((v, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    #[test]
    fn limit_matches_for_lemma_triples() {
        for (n, d, r) in [(2, 3, -1), (5, 3, -1), (4, 3, 1), (7, 2, 1), (11, 3, -1)] {
            let s = LemmaShape::unit(n, d, r).unwrap();
            let (v, rep) = check_lhospital_limit(&s, &default_points()).unwrap();
            assert!(v.pass, "{n} {d} {r}: {rep:?}");
        }
    }

    #[test]
    fn single_term_by_hand() {
        // n = 2, d = 3, r = -1: N = 1, limit = -[2]^2 q^3 / ((1-q^3)[3]^2).
        let s = LemmaShape::unit(2, 3, -1).unwrap();
        let q = rat(2, 1);
        let want = -(rat(3, 1) * rat(3, 1)) * rat(8, 1) / ((rat(1, 1) - rat(8, 1)) * rat(49, 1));
        assert_eq!(limit_at_point(&s, &q).unwrap(), want);
    }

    #[test]
    fn series_route_detects_a_wrong_claim() {
        let s = LemmaShape::unit(5, 3, -1).unwrap();
        let doubled = &limit_claimed(&s).unwrap() * &RationalFunction::constant(rat(2, 1));
        assert_ne!(limit_series(&s).unwrap(), doubled);
    }
}
