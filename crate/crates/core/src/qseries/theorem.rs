//! The general two-parameter q-supercongruence modulo `[n] Φ_n(q)^3`:
//!
//! ```text
//! sum_{k=0}^{W} [2dk+r] (q^r;q^d)_k^4 (cq^r, eq^r;q^d)_k
//!               / ((q^d;q^d)_k^4 (q^d/c, q^d/e;q^d)_k) (ce)^-k q^((2d-3r)k)
//!   ≡ [n] q^(r(r-n)/d) / (q^d;q^d)_N (1 - [n]^2 sum_{i=1}^{N} q^(di)/[di]^2)
//!     × sum_{k=0}^{N} (q^(2r+dk);q^d)_(N-k) (q^(d-r)/ce;q^d)_k (q^r;q^d)_k^3
//!                     / (q^d/c, q^d/e, q^d;q^d)_k  q^(dk)
//! ```
//!
//! with `n ≡ r (mod d)`, `r = ±1`, `N = (n-r)/d` and `W ∈ {N, n-1}`.

use serde::Serialize;

use crate::cyclo::{divides, Modulus, Verdict};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernel::{Fraction, Product, Rational};

use super::param::{common_subst, ParamValue, XMono};
use super::terms::{sum_products, Term};

/// Upper summation limit: the short `(n-r)/d` or the long `n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Truncation {
    Short,
    Long,
}

impl Truncation {
    pub const BOTH: [Truncation; 2] = [Truncation::Short, Truncation::Long];

    pub fn label(self) -> &'static str {
        match self {
            Truncation::Short => "W=(n-r)/d",
            Truncation::Long => "W=n-1",
        }
    }
}

/// Validated `(n, d, r)` with `n > 1`, `d >= 2`, `r = ±1`, `n ≡ r (mod d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub n: i64,
    pub d: i64,
    pub r: i64,
}

impl Shape {
    pub fn new(n: i64, d: i64, r: i64) -> Result<Self> {
        if n <= 1 {
            return Err(Error::Precondition(format!("n = {n} must exceed 1")));
        }
        if d < 2 {
            return Err(Error::Precondition(format!("d = {d} must be at least 2")));
        }
        if r != 1 && r != -1 {
            return Err(Error::Precondition(format!("r = {r} must be 1 or -1")));
        }
        if (n - r).rem_euclid(d) != 0 {
            return Err(Error::Precondition(format!(
                "n = {n} is not ≡ {r} (mod {d})"
            )));
        }
        Ok(Self { n, d, r })
    }

    /// `(n - r) / d`.
    pub fn short(&self) -> i64 {
        (self.n - self.r) / self.d
    }

    pub fn upper(&self, w: Truncation) -> i64 {
        match w {
            Truncation::Short => self.short(),
            Truncation::Long => self.n - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremInstance {
    pub shape: Shape,
    pub c: ParamValue,
    pub e: ParamValue,
    pub w: Truncation,
}

impl TheoremInstance {
    pub fn new(
        n: i64,
        d: i64,
        r: i64,
        c: ParamValue,
        e: ParamValue,
        w: Truncation,
    ) -> Result<Self> {
        Ok(Self {
            shape: Shape::new(n, d, r)?,
            c,
            e,
            w,
        })
    }

    pub fn subst(&self) -> u32 {
        common_subst([&self.c, &self.e])
    }
}

struct Ctx {
    n: i64,
    d: i64,
    r: i64,
    /// `q = x^sub`.
    sub: i64,
    c: XMono,
    e: XMono,
}

impl Ctx {
    fn new(t: &TheoremInstance) -> Result<Self> {
        let sub = t.subst();
        Ok(Self {
            n: t.shape.n,
            d: t.shape.d,
            r: t.shape.r,
            sub: sub as i64,
            c: t.c.to_x(sub)?,
            e: t.e.to_x(sub)?,
        })
    }

    /// `q^k` in `x`.
    fn q(&self, k: i64) -> XMono {
        XMono::x(k * self.sub)
    }

    /// Exponent of `q^d` in `x`.
    fn step(&self) -> i64 {
        self.d * self.sub
    }
}

fn lhs_terms(ctx: &Ctx, upper: i64) -> Result<Vec<Product>> {
    let (d, r) = (ctx.d, ctx.r);
    let qr = ctx.q(r);
    let qd = ctx.q(d);
    let ce = &ctx.c * &ctx.e;
    let ratio = &ctx.q(2 * d - 3 * r) / &ce;
    (0..=upper)
        .map(|k| {
            let ku = k as u64;
            let mut t = Term::new();
            t.qint(2 * d * k + r, ctx.sub, 1)?
                .poch(&qr, ctx.step(), ku, 4)?
                .poch(&(&ctx.c * &qr), ctx.step(), ku, 1)?
                .poch(&(&ctx.e * &qr), ctx.step(), ku, 1)?
                .poch(&qd, ctx.step(), ku, -4)?
                .poch(&(&qd / &ctx.c), ctx.step(), ku, -1)?
                .poch(&(&qd / &ctx.e), ctx.step(), ku, -1)?
                .mono(&ratio, k);
            Ok(t.finish())
        })
        .collect()
}

/// Left-hand side summed to `W`.
pub fn lhs_general(t: &TheoremInstance) -> Result<Fraction> {
    let ctx = Ctx::new(t)?;
    let terms = lhs_terms(&ctx, t.shape.upper(t.w))?;
    Ok(sum_products(&terms, Strategy::default()))
}

/// `1 - [n]^2 sum_{i=1}^{N} Q^(di) / [di]^2` with `Q = x^sub`.
pub(crate) fn harmonic_bracket(n: i64, d: i64, upper: i64, sub: i64) -> Result<Fraction> {
    let terms = (1..=upper)
        .map(|i| {
            let mut t = Term::new();
            t.qint(n, sub, 2)?
                .qint(d * i, sub, -2)?
                .mono(&XMono::x(d * i * sub), 1);
            Ok(t.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fraction::one().sub(&sum_products(&terms, Strategy::default())))
}

/// Right-hand side (independent of the truncation choice).
pub fn rhs_general(t: &TheoremInstance) -> Result<Fraction> {
    let ctx = Ctx::new(t)?;
    let (n, d, r) = (ctx.n, ctx.d, ctx.r);
    let big_n = t.shape.short();
    let step = ctx.step();

    let mut pre = Term::new();
    pre.qint(n, ctx.sub, 1)?
        .mono(&ctx.q(r * (r - n) / d), 1)
        .poch(&ctx.q(d), step, big_n as u64, -1)?;

    let bracket = harmonic_bracket(n, d, big_n, ctx.sub)?;

    let ce = &ctx.c * &ctx.e;
    let inner = (0..=big_n)
        .map(|k| {
            let ku = k as u64;
            let mut t = Term::new();
            t.poch(&ctx.q(2 * r + d * k), step, (big_n - k) as u64, 1)?
                .poch(&(&ctx.q(d - r) / &ce), step, ku, 1)?
                .poch(&ctx.q(r), step, ku, 3)?
                .poch(&(&ctx.q(d) / &ctx.c), step, ku, -1)?
                .poch(&(&ctx.q(d) / &ctx.e), step, ku, -1)?
                .poch(&ctx.q(d), step, ku, -1)?
                .mono(&ctx.q(d * k), 1);
            Ok(t.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    let inner = sum_products(&inner, Strategy::default());
    Ok(pre.finish().to_fraction().mul(&bracket).mul(&inner))
}

/// The modulus `[n] Φ_n(q)^(3 + extra)` in the instance's working variable.
pub fn theorem_modulus(t: &TheoremInstance, extra: u32) -> Modulus {
    Modulus::q_integer_times_phi(t.shape.n as u64, 3 + extra).with_subst(t.subst())
}

pub fn check_theorem_general(t: &TheoremInstance) -> Result<Verdict> {
    check_theorem_general_with(t, 0)
}

/// Same check against a modulus whose `Φ_n` exponent is raised by `extra`
/// (negative control).
pub fn check_theorem_general_with(t: &TheoremInstance, extra: u32) -> Result<Verdict> {
    let diff = lhs_general(t)?.sub(&rhs_general(t)?);
    divides(&theorem_modulus(t, extra), &diff)
}

/// Difference between the two truncations (the terms `N < k <= n-1`).
pub fn truncation_gap(t: &TheoremInstance) -> Result<Fraction> {
    let mut long = t.clone();
    long.w = Truncation::Long;
    let mut short = t.clone();
    short.w = Truncation::Short;
    Ok(lhs_general(&long)?.sub(&lhs_general(&short)?))
}

/// Value of a single left-hand summand at `k`, for tests and diagnostics.
pub fn lhs_summand(t: &TheoremInstance, k: i64) -> Result<Product> {
    let ctx = Ctx::new(t)?;
    Ok(lhs_terms(&ctx, k)?.pop().expect("at least one term"))
}

pub fn rational_param(num: i64, den: i64) -> ParamValue {
    ParamValue::rational(Rational::new(num.into(), den.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    fn inst(
        n: i64,
        d: i64,
        r: i64,
        c: ParamValue,
        e: ParamValue,
        w: Truncation,
    ) -> TheoremInstance {
        TheoremInstance::new(n, d, r, c, e, w).unwrap()
    }

    #[test]
    fn preconditions() {
        assert!(Shape::new(4, 3, -1).is_err());
        assert!(Shape::new(5, 3, 0).is_err());
        assert!(Shape::new(1, 3, 1).is_err());
        assert_eq!(Shape::new(8, 3, -1).unwrap().short(), 3);
        assert_eq!(Shape::new(7, 3, 1).unwrap().short(), 2);
    }

    #[test]
    fn small_instances_hold() {
        let c = ParamValue::rational(rat(2, 3));
        let e = ParamValue::new(rat(-5, 2), 1, 1).unwrap();
        for (n, d, r) in [
            (2, 3, -1),
            (5, 3, -1),
            (4, 3, 1),
            (7, 3, 1),
            (3, 4, -1),
            (5, 4, 1),
        ] {
            for w in Truncation::BOTH {
                let t = inst(n, d, r, c.clone(), e.clone(), w);
                let v = check_theorem_general(&t).unwrap();
                assert!(v.pass, "n={n} d={d} r={r} {w:?}: {v:?}");
            }
        }
    }

    #[test]
    fn raised_power_fails() {
        let c = ParamValue::rational(rat(2, 3));
        let e = ParamValue::rational(rat(7, 4));
        let t = inst(5, 3, -1, c, e, Truncation::Long);
        assert!(!check_theorem_general_with(&t, 1).unwrap().pass);
    }

    #[test]
    fn half_power_parameters() {
        let c = ParamValue::new(rat(2, 3), 1, 2).unwrap();
        let e = ParamValue::new(rat(3, 2), -1, 2).unwrap();
        let t = inst(5, 3, -1, c, e, Truncation::Short);
        assert_eq!(t.subst(), 2);
        assert!(check_theorem_general(&t).unwrap().pass);
    }
}
