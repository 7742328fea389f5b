//! `q -> 1` limits of the two minus-third sums at `n = p`, compared with the
//! classical rational sums.

use serde::Serialize;

use crate::cyclo::Verdict;
use crate::error::{Error, Result};
use crate::kernel::{Product, Rational};
use crate::padic::{classical::minus_third_sum, require_prime};

use super::corollary::{c24_lhs_terms, c26_lhs_terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeSum {
    /// `sum [6k-1] (q^-1;q^3)_k^4 / (q^3;q^3)_k^4 q^(5k)`, limit weight `6k-1`.
    C26Lhs,
    /// `sum [6k-1]_{q^2} [6k-1]^2 (q^-2;q^6)_k^4 / (q^6;q^6)_k^4 q^(4k)`, weight `(6k-1)^3`.
    C24Lhs,
}

impl BridgeSum {
    pub const ALL: [BridgeSum; 2] = [BridgeSum::C26Lhs, BridgeSum::C24Lhs];

    pub fn id(self) -> &'static str {
        match self {
            BridgeSum::C26Lhs => "c26-lhs",
            BridgeSum::C24Lhs => "c24-lhs",
        }
    }

    fn weight_power(self) -> u32 {
        match self {
            BridgeSum::C26Lhs => 1,
            BridgeSum::C24Lhs => 3,
        }
    }

    fn terms(self, upper: i64) -> Result<Vec<Product>> {
        match self {
            BridgeSum::C26Lhs => c26_lhs_terms(upper),
            BridgeSum::C24Lhs => c24_lhs_terms(upper),
        }
    }
}

pub fn admits(p: u64) -> Result<()> {
    require_prime(p)?;
    if p % 3 != 2 {
        return Err(Error::Precondition(format!(
            "the q -> 1 bridge needs p ≡ 2 (mod 3), got p = {p}"
        )));
    }
    Ok(())
}

/// Sum of the summand limits, taken on the factored form.
pub fn q_limit_factored(which: BridgeSum, p: u64) -> Result<Rational> {
    admits(p)?;
    let upper = (p as i64 + 1) / 3;
    which.terms(upper)?.iter().map(Product::limit_at_one).sum()
}

/// Sum of the summand values at 1, each reduced as a rational function first.
pub fn q_limit_reduced(which: BridgeSum, p: u64) -> Result<Rational> {
    admits(p)?;
    let upper = (p as i64 + 1) / 3;
    which
        .terms(upper)?
        .iter()
        .map(|t| {
            t.to_fraction()
                .to_rational_function()
                .eval(&Rational::from_integer(1.into()))
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub factored: String,
    pub reduced: String,
    pub classical: String,
}

pub fn check_q_to_1_bridge(which: BridgeSum, p: u64) -> Result<(Verdict, BridgeReport)> {
    let factored = q_limit_factored(which, p)?;
    let reduced = q_limit_reduced(which, p)?;
    let classical = minus_third_sum(p, which.weight_power());
    let pass = factored == classical && reduced == classical;
    let report = BridgeReport {
        factored: factored.to_string(),
        reduced: reduced.to_string(),
        classical: classical.to_string(),
    };
    let mut v = Verdict::identity(pass, "q -> 1 limit equals the classical sum");
    if let Some(w) = v.failure_witness.as_mut() {
        w.remainder = vec![
            report.factored.clone(),
            report.reduced.clone(),
            report.classical.clone(),
        ];
    }
    Ok((v, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    #[test]
    fn zeroth_summand_tends_to_minus_one() {
        for which in BridgeSum::ALL {
            let t = which.terms(0).unwrap();
            assert_eq!(t[0].limit_at_one().unwrap(), int(-1));
        }
    }

    #[test]
    fn p_two_by_hand() {
        // k = 1: (-1/3)^4 = 1/81, so -1 + 5/81 and -1 + 125/81.
        assert_eq!(
            q_limit_factored(BridgeSum::C26Lhs, 2).unwrap(),
            rat(-76, 81)
        );
        assert_eq!(q_limit_factored(BridgeSum::C24Lhs, 2).unwrap(), rat(44, 81));
    }

    #[test]
    fn limits_match_classical_sums() {
        for p in [2, 5, 11] {
            for which in BridgeSum::ALL {
                let (v, rep) = check_q_to_1_bridge(which, p).unwrap();
                assert!(v.pass, "{} p = {p}: {rep:?}", which.id());
            }
        }
    }

    #[test]
    fn rejects_other_classes() {
        assert!(matches!(admits(7), Err(Error::Precondition(_))));
        assert!(matches!(admits(9), Err(Error::NotPrime(9))));
    }
}
