//! Cyclotomic polynomials, q-integers, composite moduli, and the
//! divisibility test behind every q-congruence.
//!
//! `A ≡ B (mod P)` for rational functions means: in the reduced form of
//! `A - B`, the numerator is divisible by `P` and the denominator is coprime
//! to `P`. All moduli here are products of cyclotomic polynomials, so the
//! test is carried out one irreducible factor `Φ_m(x)` at a time by
//! comparing valuations of numerator and denominator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Binomial, Fraction, IntPoly, Polynomial, RationalFunction};

static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Φ_n(x)` with integer coefficients, memoized.
///
/// Built by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_int(n: u64) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::monomial(1.into(), n as usize).sub(&IntPoly::one());
    for d in divisors(n) {
        if d < n {
            p = p
                .div_exact_monic(&cyclotomic_int(d))
                .expect("Φ_d divides x^n - 1 for d | n");
        }
    }
    let p = Arc::new(p);
    cache.write().unwrap().entry(n).or_insert(p).clone()
}

pub fn cyclotomic(n: u64) -> Polynomial {
    cyclotomic_int(n).to_polynomial()
}

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u64) -> Polynomial {
    assert!(n >= 1);
    Polynomial::from_i64s(&vec![1; n as usize])
}

/// Indices `m` with `Φ_m(x) | Φ_n(x^D)`; the product is exactly `Φ_n(x^D)`.
pub fn factors_of_substituted(n: u64, subst: u64) -> Vec<u64> {
    divisors(n * subst)
        .into_iter()
        .filter(|&m| m / m.gcd(&subst) == n)
        .collect()
}

/// Multiplicity of `Φ_m(x)` in the binomial `1 - c x^s`.
///
/// Only `c = ±1` can vanish at roots of unity: `1 - x^s` contains each
/// `Φ_m` with `m | s` once, and `1 + x^s` each `Φ_m` with `m | 2s, m ∤ s`.
pub fn binomial_phi_multiplicity(b: &Binomial, m: u64) -> u32 {
    let s = b.exp as u64;
    if b.coeff.is_one() {
        u32::from(s.is_multiple_of(m))
    } else if b.coeff.is_integer() && (-b.coeff.clone()).is_one() {
        u32::from((2 * s).is_multiple_of(m) && !s.is_multiple_of(m))
    } else {
        0
    }
}

/// A product `[n]^{0|1} · ∏ Φ_{n_i}(q)^{m_i}` with `q = x^D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Modulus {
    pub factors: Vec<(u64, u32)>,
    pub include_q_integer_of: Option<u64>,
    pub subst: u32,
}

impl Modulus {
    pub fn phi_power(n: u64, power: u32) -> Self {
        Self {
            factors: vec![(n, power)],
            include_q_integer_of: None,
            subst: 1,
        }
    }

    pub fn q_integer(n: u64) -> Self {
        Self {
            factors: Vec::new(),
            include_q_integer_of: Some(n),
            subst: 1,
        }
    }

    /// `[n] Φ_n(q)^power`.
    pub fn q_integer_times_phi(n: u64, power: u32) -> Self {
        Self {
            factors: vec![(n, power)],
            include_q_integer_of: Some(n),
            subst: 1,
        }
    }

    pub fn with_subst(mut self, subst: u32) -> Self {
        assert!(subst >= 1);
        self.subst = subst;
        self
    }

    /// Irreducible factorization over `Q[x]`: `m -> exponent of Φ_m(x)`.
    pub fn irreducible_factors(&self) -> BTreeMap<u64, u32> {
        let d = self.subst as u64;
        let mut out = BTreeMap::new();
        for &(n, pow) in &self.factors {
            for m in factors_of_substituted(n, d) {
                *out.entry(m).or_insert(0) += pow;
            }
        }
        if let Some(n) = self.include_q_integer_of {
            for e in divisors(n).into_iter().filter(|&e| e > 1) {
                for m in factors_of_substituted(e, d) {
                    *out.entry(m).or_insert(0) += 1;
                }
            }
        }
        out.retain(|_, e| *e > 0);
        out
    }

    pub fn degree(&self) -> u64 {
        self.irreducible_factors()
            .iter()
            .map(|(&m, &e)| euler_phi(m) * e as u64)
            .sum()
    }

    /// Fully expanded modulus in the working variable `x`.
    pub fn build(&self) -> Polynomial {
        let mut acc = IntPoly::one();
        for (&m, &e) in &self.irreducible_factors() {
            acc = acc.mul(&cyclotomic_int(m).pow(e));
        }
        acc.to_polynomial()
    }

    /// Raises the exponent of every `Φ_{n_i}` factor by `extra`.
    pub fn raised(&self, extra: u32) -> Self {
        let mut out = self.clone();
        for f in &mut out.factors {
            f.1 += extra;
        }
        out
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.include_q_integer_of {
            parts.push(format!("[{n}]"));
        }
        for &(n, p) in &self.factors {
            parts.push(if p == 1 {
                format!("Phi_{n}(q)")
            } else {
                format!("Phi_{n}(q)^{p}")
            });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))?;
        if self.subst != 1 {
            write!(f, " with q = x^{}", self.subst)?;
        }
        Ok(())
    }
}

/// Something whose reduced form can be tested against cyclotomic factors.
pub trait CongruenceTarget {
    fn is_zero(&self) -> bool;
    /// A nonzero integer multiple of the (not necessarily reduced) numerator.
    fn numerator_int(&self) -> IntPoly;
    /// Multiplicity of `Φ_m(x)` in the matching (not necessarily reduced)
    /// denominator.
    fn denominator_valuation(&self, m: u64) -> u32;
}

impl CongruenceTarget for RationalFunction {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }

    fn numerator_int(&self) -> IntPoly {
        self.num().to_primitive_int().1
    }

    fn denominator_valuation(&self, m: u64) -> u32 {
        int_valuation(&self.den().to_primitive_int().1, &cyclotomic_int(m)).unwrap_or(0)
    }
}

impl CongruenceTarget for Fraction {
    fn is_zero(&self) -> bool {
        Fraction::is_zero(self)
    }

    fn numerator_int(&self) -> IntPoly {
        self.numerator().clone()
    }

    fn denominator_valuation(&self, m: u64) -> u32 {
        self.denominator()
            .map(|(b, mult)| mult * binomial_phi_multiplicity(b, m))
            .sum()
    }
}

/// Exact multiplicity of the monic factor `phi` in `p` (`None` for zero).
pub fn int_valuation(p: &IntPoly, phi: &IntPoly) -> Option<u32> {
    if p.is_zero() {
        return None;
    }
    let mut cur = p.clone();
    let mut v = 0;
    while let Some(q) = cur.div_exact_monic(phi) {
        cur = q;
        v += 1;
    }
    Some(v)
}

/// Valuation of the reduced form at `Φ_m(x)`: positive means the factor
/// divides the numerator, negative means it divides the denominator.
/// `None` for the zero function.
pub fn phi_valuation(f: &impl CongruenceTarget, m: u64) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    let vn = int_valuation(&f.numerator_int(), &cyclotomic_int(m))?;
    Some(vn as i64 - f.denominator_valuation(m) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorValuation {
    pub m: u64,
    pub required: u32,
    /// `None` when the difference is identically zero.
    pub found: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub factor: String,
    /// Remainder of the reduced numerator modulo the offending factor power,
    /// lowest degree first.
    pub remainder: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Degree of the numerator of the tested difference (`-1` for zero).
    pub numerator_degree: i64,
    pub modulus: String,
    pub valuations: Vec<FactorValuation>,
    pub failure_witness: Option<Witness>,
}

impl Verdict {
    /// Outcome of an exact identity check, where no modulus is involved.
    pub fn identity(holds: bool, what: &str) -> Self {
        Self {
            pass: holds,
            numerator_degree: if holds { -1 } else { 0 },
            modulus: format!("exact: {what}"),
            valuations: Vec::new(),
            failure_witness: (!holds).then(|| Witness {
                factor: "identity".into(),
                remainder: vec!["nonzero difference".into()],
            }),
        }
    }

    /// Conjunction of several verdicts; the first witness wins.
    pub fn all(parts: Vec<Verdict>, modulus: String) -> Self {
        let pass = parts.iter().all(|v| v.pass);
        let failure_witness = parts.iter().find_map(|v| v.failure_witness.clone());
        Self {
            pass,
            numerator_degree: parts.iter().map(|v| v.numerator_degree).max().unwrap_or(-1),
            modulus,
            valuations: parts.into_iter().flat_map(|v| v.valuations).collect(),
            failure_witness,
        }
    }
}

/// Decides `f ≡ 0 (mod m)` in the reduced-form sense.
///
/// Fails with [`Error::DenominatorNotCoprime`] when the reduced denominator
/// of `f` shares a factor with the modulus.
pub fn divides(m: &Modulus, f: &impl CongruenceTarget) -> Result<Verdict> {
    let factors = m.irreducible_factors();
    if f.is_zero() {
        return Ok(Verdict {
            pass: true,
            numerator_degree: -1,
            modulus: m.to_string(),
            valuations: factors
                .iter()
                .map(|(&m, &e)| FactorValuation {
                    m,
                    required: e,
                    found: None,
                })
                .collect(),
            failure_witness: None,
        });
    }
    let num = f.numerator_int();
    let mut valuations = Vec::new();
    let mut witness = None;
    for (&idx, &required) in &factors {
        let phi = cyclotomic_int(idx);
        let vd = f.denominator_valuation(idx);
        let vn = int_valuation(&num, &phi).expect("nonzero numerator");
        let net = vn as i64 - vd as i64;
        if net < 0 {
            return Err(Error::DenominatorNotCoprime {
                factor: format!("Phi_{idx}(x)"),
            });
        }
        if net < required as i64 && witness.is_none() {
            let mut reduced = num.clone();
            for _ in 0..vd {
                reduced = reduced
                    .div_exact_monic(&phi)
                    .expect("valuation was counted");
            }
            let (_, rem) = reduced.divrem_monic(&phi.pow(required));
            witness = Some(Witness {
                factor: format!("Phi_{idx}(x)^{required}"),
                remainder: rem.coeffs().iter().map(|c| c.to_string()).collect(),
            });
        }
        valuations.push(FactorValuation {
            m: idx,
            required,
            found: Some(net),
        });
    }
    Ok(Verdict {
        pass: witness.is_none(),
        numerator_degree: num.degree().map_or(-1, |d| d as i64),
        modulus: m.to_string(),
        valuations,
        failure_witness: witness,
    })
}

/// Returns true when `p` has no cyclotomic factor from `m`.
pub fn coprime_to(m: &Modulus, p: &Polynomial) -> bool {
    if p.is_zero() {
        return false;
    }
    let (_, z) = p.to_primitive_int();
    m.irreducible_factors()
        .keys()
        .all(|&idx| !z.divrem_monic(&cyclotomic_int(idx)).1.is_zero())
}
