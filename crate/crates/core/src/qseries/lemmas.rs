//! The auxiliary congruences behind the general theorem: the
//! six-parameter sum modulo `Φ_n(q)(1-aq^n)(a-q^n)`, its exact evaluation at
//! `b = q^n`, its vanishing modulo `[n]`, and the parametric refinement
//! modulo `Φ_n(q)^2 (1-aq^n)(a-q^n)`.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclo::{divides, Modulus, Verdict};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernel::{Fraction, Product};

use super::param::{common_subst, ParamValue, XMono};
use super::terms::{sum_products, QVar, Term};
use super::theorem::Truncation;

/// Integers `(n, d, r)` for the lemma family, with `N = (n - r) / d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaShape {
    pub n: i64,
    pub d: i64,
    pub r: i64,
}

impl LemmaShape {
    /// `n > 1`, `d >= 2`, `n ≡ r (mod d)`, `gcd(r, d) = 1`.
    pub fn new(n: i64, d: i64, r: i64) -> Result<Self> {
        if n <= 1 || d < 2 {
            return Err(Error::Precondition(format!(
                "need n > 1 and d >= 2, got n = {n}, d = {d}"
            )));
        }
        if (n - r).rem_euclid(d) != 0 {
            return Err(Error::Precondition(format!(
                "n = {n} is not ≡ {r} (mod {d})"
            )));
        }
        if r.gcd(&d) != 1 {
            return Err(Error::Precondition(format!(
                "gcd(r, d) = gcd({r}, {d}) ≠ 1"
            )));
        }
        Ok(Self { n, d, r })
    }

    /// Like [`LemmaShape::new`] with `r ∈ {1, -1}`.
    pub fn unit(n: i64, d: i64, r: i64) -> Result<Self> {
        if r != 1 && r != -1 {
            return Err(Error::Precondition(format!("r = {r} must be 1 or -1")));
        }
        Self::new(n, d, r)
    }

    pub fn big_n(&self) -> i64 {
        (self.n - self.r) / self.d
    }

    pub fn upper(&self, w: Truncation) -> i64 {
        match w {
            Truncation::Short => self.big_n(),
            Truncation::Long => self.n - 1,
        }
    }

    /// Least `0 <= m1 < n` with `d m1 ≡ -r (mod n)`.
    pub fn m1(&self) -> Result<i64> {
        (0..self.n)
            .find(|m| (self.d * m + self.r).rem_euclid(self.n) == 0)
            .ok_or_else(|| {
                Error::Precondition(format!("gcd(d, n) ≠ 1 for d = {}, n = {}", self.d, self.n))
            })
    }
}

/// Free parameters `a, b, c, e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abce {
    pub a: ParamValue,
    pub b: ParamValue,
    pub c: ParamValue,
    pub e: ParamValue,
}

struct Ctx {
    n: i64,
    d: i64,
    r: i64,
    big_n: i64,
    v: QVar,
    a: XMono,
    b: XMono,
    c: XMono,
    e: XMono,
}

impl Ctx {
    fn new(s: &LemmaShape, p: &Abce) -> Result<Self> {
        let sub = common_subst([&p.a, &p.b, &p.c, &p.e]);
        Ok(Self {
            n: s.n,
            d: s.d,
            r: s.r,
            big_n: s.big_n(),
            v: QVar::new(sub),
            a: p.a.to_x(sub)?,
            b: p.b.to_x(sub)?,
            c: p.c.to_x(sub)?,
            e: p.e.to_x(sub)?,
        })
    }

    fn q(&self, k: i64) -> XMono {
        self.v.q(k)
    }

    fn ce(&self) -> XMono {
        &self.c * &self.e
    }

    /// `(q^(d-r)/ce, q^r/b, aq^r, q^r/a; q^d)_k / (q^d, q^d/c, q^d/e, q^(2r)/b; q^d)_k q^(dk)`.
    fn tail_term(&self, k: i64) -> Result<Term> {
        let (d, r) = (self.d, self.r);
        let qr = self.q(r);
        let qd = self.q(d);
        let top = [
            &self.q(d - r) / &self.ce(),
            &qr / &self.b,
            &self.a * &qr,
            &qr / &self.a,
        ];
        let bottom = [
            qd.clone(),
            &qd / &self.c,
            &qd / &self.e,
            &self.q(2 * r) / &self.b,
        ];
        let mut t = Term::new();
        self.v
            .ratio(&mut t, &top, &bottom, d, k as u64)?
            .mono(&self.q(d * k), 1);
        Ok(t)
    }

    fn tail_sum(&self) -> Result<Fraction> {
        let terms = (0..=self.big_n)
            .map(|k| Ok(self.tail_term(k)?.finish()))
            .collect::<Result<Vec<_>>>()?;
        Ok(sum_products(&terms, Strategy::default()))
    }
}

/// `sum_{k=0}^{upper} [2dk+r] (q^r, cq^r, eq^r, q^r/b, aq^r, q^r/a; q^d)_k
///  / (q^d, q^d/c, q^d/e, bq^d, q^d/a, aq^d; q^d)_k (b/ce)^k q^((2d-3r)k)`.
pub fn six_param_sum(s: &LemmaShape, p: &Abce, upper: i64) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    six_param_sum_ctx(&x, upper)
}

fn six_param_sum_ctx(x: &Ctx, upper: i64) -> Result<Fraction> {
    let (d, r) = (x.d, x.r);
    let qr = x.q(r);
    let qd = x.q(d);
    let top = [
        qr.clone(),
        &x.c * &qr,
        &x.e * &qr,
        &qr / &x.b,
        &x.a * &qr,
        &qr / &x.a,
    ];
    let bottom = [
        qd.clone(),
        &qd / &x.c,
        &qd / &x.e,
        &x.b * &qd,
        &qd / &x.a,
        &x.a * &qd,
    ];
    let ratio = &(&x.b / &x.ce()) * &x.q(2 * d - 3 * r);
    let terms = (0..=upper)
        .map(|k| {
            let mut t = Term::new();
            t.qint(2 * d * k + r, x.v.sub, 1)?;
            x.v.ratio(&mut t, &top, &bottom, d, k as u64)?
                .mono(&ratio, k);
            Ok(t.finish())
        })
        .collect::<Result<Vec<Product>>>()?;
    Ok(sum_products(&terms, Strategy::default()))
}

/// Right-hand side of the six-parameter congruence modulo
/// `Φ_n(q)(1-aq^n)(a-q^n)`.
pub fn la1_rhs(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    let (d, r, big_n) = (x.d, x.r, x.big_n);
    let mut pre = Term::new();
    pre.qint(x.n, x.v.sub, 1)?.mono(&(&x.b / &x.q(r)), big_n);
    x.v.ratio(
        &mut pre,
        &[&x.q(2 * r) / &x.b],
        &[&x.b * &x.q(d)],
        d,
        big_n as u64,
    )?;
    Ok(x.tail_sum()?.mul_product(&pre.finish()))
}

fn la1_difference(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    Ok(six_param_sum(s, p, s.big_n())?.sub(&la1_rhs(s, p)?))
}

/// Checks the six-parameter congruence: exact vanishing at `a = q^n` and
/// `a = q^-n`, and `Φ_n` divisibility at the sampled `a` in `p`.
pub fn check_lemma_la1(s: &LemmaShape, p: &Abce) -> Result<Verdict> {
    if !(s.n + s.d - s.n * s.d <= s.r && s.r <= s.n) {
        return Err(Error::Precondition(format!(
            "n + d - nd <= r <= n fails for (n, d, r) = ({}, {}, {})",
            s.n, s.d, s.r
        )));
    }
    let mut parts = Vec::new();
    for sign in [1, -1] {
        let at = Abce {
            a: ParamValue::q_power(sign * s.n, 1),
            ..p.clone()
        };
        let zero = la1_difference(s, &at)?.is_zero();
        parts.push(Verdict::identity(
            zero,
            &format!("difference vanishes at a = q^{}", sign * s.n),
        ));
    }
    let sub = common_subst([&p.a, &p.b, &p.c, &p.e]);
    let m = Modulus::phi_power(s.n as u64, 1).with_subst(sub);
    parts.push(divides(&m, &la1_difference(s, p)?)?);
    Ok(Verdict::all(
        parts,
        format!("Phi_{}(q)(1-aq^{n})(a-q^{n})", s.n, n = s.n),
    ))
}

/// Right-hand side of the evaluation at `b = q^n` (which is substituted here).
pub fn la2_rhs(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    let (d, r, big_n) = (x.d, x.r, x.big_n);
    let qd = x.q(d);
    let mut pre = Term::new();
    pre.qint(x.n, x.v.sub, 1)?;
    x.v.ratio(
        &mut pre,
        &[x.q(r), x.q(d - r)],
        &[&qd / &x.a, &x.a * &qd],
        d,
        big_n as u64,
    )?;
    Ok(x.tail_sum()?.mul_product(&pre.finish()))
}

/// Exact equality of both sides at `b = q^n`; `p.b` is ignored.
pub fn check_lemma_la2(s: &LemmaShape, p: &Abce, w: Truncation) -> Result<Verdict> {
    let p = Abce {
        b: ParamValue::q_power(s.n, 1),
        ..p.clone()
    };
    let lhs = six_param_sum(s, &p, s.upper(w))?;
    let holds = lhs.equals(&la2_rhs(s, &p)?);
    Ok(Verdict::identity(
        holds,
        &format!("both sides agree at b = q^{}", s.n),
    ))
}

/// Both truncations (at `m1` and at `n-1`) vanish modulo `[n]`.
pub fn check_lemma_la3(s: &LemmaShape, p: &Abce) -> Result<Verdict> {
    let m1 = s.m1()?;
    let sub = common_subst([&p.a, &p.b, &p.c, &p.e]);
    let m = Modulus::q_integer(s.n as u64).with_subst(sub);
    let parts = [m1, s.n - 1]
        .into_iter()
        .map(|upper| divides(&m, &six_param_sum(s, p, upper)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::all(parts, m.to_string()))
}

/// `Q_q(a, n)` from the parametric theorem.
pub fn q_factor(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    q_factor_ctx(&x)
}

fn q_factor_ctx(x: &Ctx) -> Result<Fraction> {
    let (n, d, r, big_n) = (x.n, x.d, x.r, x.big_n);
    let qd = x.q(d);
    let lead = x.q(r * (r - n) / d);

    let mut inv_p = Term::new();
    inv_p.poch(&qd, x.v.step(d), big_n as u64, -1)?;
    let inv_p = inv_p.finish();

    let mut ratio = Term::new();
    x.v.ratio(
        &mut ratio,
        std::slice::from_ref(&qd),
        &[&qd / &x.a, &x.a * &qd],
        d,
        big_n as u64,
    )?;
    let braces = inv_p.to_fraction().sub(&ratio.finish().to_fraction());

    // (1 - a q^n)(a - q^n) / (1 - a)^2 = a (1 - a q^n)(1 - q^n / a) / (1 - a)^2
    let mut front = Term::new();
    front
        .mono(&lead, 1)
        .mono(&x.a, 1)
        .one_minus(&(&x.a * &x.q(n)), 1)?
        .one_minus(&(&x.q(n) / &x.a), 1)?
        .one_minus(&x.a, -2)?;
    let mut tail = Term::from_product(inv_p);
    tail.mono(&lead, 1);
    Ok(braces
        .mul_product(&front.finish())
        .add(&tail.finish().to_fraction()))
}

/// Left-hand side of the parametric theorem, summed to `N`.
pub fn thm2_lhs(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    let (d, r) = (x.d, x.r);
    let qr = x.q(r);
    let qd = x.q(d);
    let top = [
        qr.clone(),
        qr.clone(),
        &x.c * &qr,
        &x.e * &qr,
        &x.a * &qr,
        &qr / &x.a,
    ];
    let bottom = [
        qd.clone(),
        qd.clone(),
        &qd / &x.c,
        &qd / &x.e,
        &qd / &x.a,
        &x.a * &qd,
    ];
    let ratio = &x.q(2 * d - 3 * r) / &x.ce();
    let terms = (0..=x.big_n)
        .map(|k| {
            let mut t = Term::new();
            t.qint(2 * d * k + r, x.v.sub, 1)?;
            x.v.ratio(&mut t, &top, &bottom, d, k as u64)?
                .mono(&ratio, k);
            Ok(t.finish())
        })
        .collect::<Result<Vec<Product>>>()?;
    Ok(sum_products(&terms, Strategy::default()))
}

/// Right-hand side of the parametric theorem.
pub fn thm2_rhs(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    let x = Ctx::new(s, p)?;
    let (d, r, big_n) = (x.d, x.r, x.big_n);
    let qr = x.q(r);
    let qd = x.q(d);
    let top = [&x.q(d - r) / &x.ce(), &x.a * &qr, &qr / &x.a, qr.clone()];
    let bottom = [qd.clone(), &qd / &x.c, &qd / &x.e];
    let terms = (0..=big_n)
        .map(|k| {
            let mut t = Term::new();
            t.poch(&x.q(2 * r + d * k), x.v.step(d), (big_n - k) as u64, 1)?;
            x.v.ratio(&mut t, &top, &bottom, d, k as u64)?
                .mono(&x.q(d * k), 1);
            Ok(t.finish())
        })
        .collect::<Result<Vec<Product>>>()?;
    let mut n_int = Term::new();
    n_int.qint(x.n, x.v.sub, 1)?;
    Ok(sum_products(&terms, Strategy::default())
        .mul(&q_factor_ctx(&x)?)
        .mul_product(&n_int.finish()))
}

fn thm2_difference(s: &LemmaShape, p: &Abce) -> Result<Fraction> {
    Ok(thm2_lhs(s, p)?.sub(&thm2_rhs(s, p)?))
}

/// Exact vanishing at `a = q^±n` and `Φ_n^2` divisibility at the sampled `a`.
/// `p.b` does not enter.
pub fn check_thm2(s: &LemmaShape, p: &Abce) -> Result<Verdict> {
    check_thm2_with(s, p, 0)
}

pub fn check_thm2_with(s: &LemmaShape, p: &Abce, extra: u32) -> Result<Verdict> {
    let mut parts = Vec::new();
    for sign in [1, -1] {
        let at = Abce {
            a: ParamValue::q_power(sign * s.n, 1),
            ..p.clone()
        };
        let zero = thm2_difference(s, &at)?.is_zero();
        parts.push(Verdict::identity(
            zero,
            &format!("difference vanishes at a = q^{}", sign * s.n),
        ));
    }
    let sub = common_subst([&p.a, &p.c, &p.e]);
    let m = Modulus::phi_power(s.n as u64, 2 + extra).with_subst(sub);
    parts.push(divides(&m, &thm2_difference(s, p)?)?);
    Ok(Verdict::all(
        parts,
        format!("Phi_{n}(q)^{}(1-aq^{n})(a-q^{n})", 2 + extra, n = s.n),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    fn abce(a: (i64, i64), b: (i64, i64), c: (i64, i64), e: (i64, i64)) -> Abce {
        let r = |(n, d): (i64, i64)| ParamValue::rational(rat(n, d));
        Abce {
            a: r(a),
            b: r(b),
            c: r(c),
            e: r(e),
        }
    }

    const TRIPLES: [(i64, i64, i64); 3] = [(2, 3, -1), (5, 3, -1), (4, 3, 1)];

    #[test]
    fn m1_values() {
        // 3 * 2 = 6 ≡ 1 (mod 5)
        assert_eq!(LemmaShape::new(5, 3, -1).unwrap().m1().unwrap(), 2);
        assert_eq!(LemmaShape::new(8, 3, -1).unwrap().m1().unwrap(), 3);
        assert_eq!(LemmaShape::new(4, 3, 1).unwrap().m1().unwrap(), 1);
        assert_eq!(LemmaShape::new(2, 3, -1).unwrap().m1().unwrap(), 1);
    }

    #[test]
    fn la1_holds() {
        let p = abce((7, 2), (3, 1), (2, 1), (5, 1));
        for (n, d, r) in TRIPLES {
            let s = LemmaShape::new(n, d, r).unwrap();
            let v = check_lemma_la1(&s, &p).unwrap();
            assert!(v.pass, "{n} {d} {r}: {v:?}");
        }
    }

    #[test]
    fn la2_holds_for_both_truncations() {
        let p = abce((2, 1), (1, 1), (3, 1), (5, 1));
        for (n, d, r) in TRIPLES {
            let s = LemmaShape::unit(n, d, r).unwrap();
            for w in Truncation::BOTH {
                assert!(
                    check_lemma_la2(&s, &p, w).unwrap().pass,
                    "{n} {d} {r} {w:?}"
                );
            }
        }
    }

    #[test]
    fn la3_holds_including_unit_a_b() {
        for p in [
            abce((7, 2), (-3, 4), (2, 1), (5, 3)),
            abce((1, 1), (1, 1), (2, 1), (-5, 3)),
        ] {
            for (n, d, r) in TRIPLES {
                let s = LemmaShape::new(n, d, r).unwrap();
                let v = check_lemma_la3(&s, &p).unwrap();
                assert!(v.pass, "{n} {d} {r}: {v:?}");
            }
        }
    }

    #[test]
    fn thm2_holds_and_is_sharp_somewhere() {
        let p = abce((4, 3), (1, 1), (2, 1), (3, 1));
        for (n, d, r) in TRIPLES {
            let s = LemmaShape::unit(n, d, r).unwrap();
            let v = check_thm2(&s, &p).unwrap();
            assert!(v.pass, "{n} {d} {r}: {v:?}");
        }
        let s = LemmaShape::unit(5, 3, -1).unwrap();
        assert!(!check_thm2_with(&s, &p, 2).unwrap().pass);
    }

    #[test]
    fn side_condition_enforced() {
        let s = LemmaShape::new(8, 3, 2).unwrap();
        assert!(check_lemma_la1(&s, &abce((2, 1), (3, 1), (5, 1), (7, 1))).is_ok());
        let s = LemmaShape::new(4, 3, 7).unwrap();
        assert!(matches!(
            check_lemma_la1(&s, &abce((2, 1), (3, 1), (5, 1), (7, 1))),
            Err(Error::Precondition(_))
        ));
    }
}
